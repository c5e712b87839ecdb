// Copyright 2026 the rkr authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "rkr/pmf.hpp"

namespace rkr {

// X_n is a j-RkR when exactly j of the k values immediately preceding X_n are
// >= X_n (ties count). Indices are 1-based to match the usual notation.

// Query tuple shared by the probability operations; i0 is the target value,
// n the horizon (first index is k+1, so n >= k+1 when used).
struct RecordQuery {
  int k = 1;
  int j = 0;
  std::optional<int> i0;
  std::optional<long long> n;
};

struct EventSeries {
  int k = 1;
  // (index n, level j_n) for n = k+1..len(sequence).
  std::vector<std::pair<long long, int>> levels;
};

enum class Transition { stay_j, up_to_j_plus_1 };
enum class SuccessiveVariant { paper, exchangeable };
enum class PredictionVariant { paper, corrected };

int rkr_level(const std::vector<int>& sequence, long long n, int k);
EventSeries detect_events(const std::vector<int>& sequence, int k);

// P(one (k+1)-window ends in a j-RkR equal to i0):
// binom(k,j) * S_i^j * C_{i-1}^(k-j) * p_i.
double window_event_prob(const Pmf& pmf, const RecordQuery& q);

// Complement, evaluated via (1 - binom(k,j) S^j C^(k-j)) p_i + (1 - p_i).
double window_nonevent_prob(const Pmf& pmf, const RecordQuery& q);

struct UnionBound {
  double raw = 0.0;     // (n-k) * window_event_prob
  double capped = 0.0;  // min(raw, 1)
};
UnionBound first_n_union_bound(const Pmf& pmf, const RecordQuery& q);

// Conditional probability that i0 is a j-RkR (stay) or (j+1)-RkR (up) at
// index n+1 given it was a j-RkR at index n. The `paper` variant evaluates
// the published factors S_i p_i / C_{i-1} p_i; the `exchangeable` variant
// evaluates (j/k) p_i / ((k-j)/k) p_i, which matches exhaustive enumeration.
double successive_prob(const Pmf& pmf, const RecordQuery& q, Transition transition,
                       SuccessiveVariant variant);

// P(X_n is a j-RkR) = sum_i window_event_prob(i).
double marginal_prob(const Pmf& pmf, int k, int j);

// Posterior q_i = window_event_prob(i) / marginal, i = 1..M.
std::vector<double> posterior(const Pmf& pmf, int k, int j);

// P(X_{n+1} is a j-RkR | X_n is a j-RkR). The `paper` variant keeps the
// published diagonal term S_i p_i; the `corrected` variant replaces it with
// (j/k) p_i, which matches exhaustive enumeration. Off-diagonal terms use the
// convention that a ratio with zero denominator contributes 0.
double prediction_prob(const Pmf& pmf, int k, int j, PredictionVariant variant);

}  // namespace rkr
