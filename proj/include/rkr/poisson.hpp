// Copyright 2026 the rkr authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "rkr/count_distribution.hpp"
#include "rkr/pmf.hpp"

namespace rkr {

// Poisson approximation of the event count W = sum of the window indicators
// xi_i, via the Stein-Chen method: moment formulas, lambda, and total
// variation bounds.

enum class BoundVariant { paper, conservative };

// E(xi) = binom(k,j) S^j (1-S)^(k-j) p at the target value i0; identical to
// records::window_event_prob.
double xi_mean(const Pmf& pmf, int i0, int k, int j);

// phi_m = E(xi_i xi_{i+m}). For 1 <= m <= k evaluates the overlap sum over t
// (terms with a zero binomial coefficient are skipped; their exponents can be
// negative but they contribute nothing); for m > k the windows are disjoint
// and this is xi_mean squared.
double pair_moment_formula(const Pmf& pmf, int i0, int k, int j, int m);

// lambda = n * xi_mean.
double lambda_param(const Pmf& pmf, int i0, int k, int j, long long n);

// Upper bound on d_TV(W, Po(lambda)). The `paper` variant is
// n min(3, 1/lambda) (sum_s phi_s + (k+1) p^2); the `conservative` variant
// restores full ordered-pair neighborhood counting,
// n min(3, 1/lambda) (2 sum_s phi_s + (2k+1) p^2), and is the only variant
// asserted against exact TV. min(3, 1/lambda) is taken as 3 when lambda = 0.
double stein_chen_bound(const Pmf& pmf, int i0, int k, int j, long long n, BoundVariant variant);

// Po(lambda) truncated at w_max, remaining mass in the overflow bucket;
// masses via the multiplicative recurrence from e^(-lambda).
CountDistribution poisson_pmf(double lambda, long long w_max);

struct BoundReport {
  double lambda = 0.0;
  double p = 0.0;                   // per-window event probability
  std::vector<double> phi;          // phi_m, m = 1..k
  double bound_paper = 0.0;
  double bound_conservative = 0.0;
  std::optional<double> tv_exact;
  std::optional<double> tv_empirical;
};

// Fills everything except the optional TV fields.
BoundReport bound_report(const Pmf& pmf, int i0, int k, int j, long long n);

}  // namespace rkr
