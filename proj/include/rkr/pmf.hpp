// Copyright 2026 the rkr authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

namespace rkr {

// Finite discrete distribution on the support {1..M}.
//
// Values are 1-based throughout. The tail S_i = P(X >= i) and the cdf
// C_i = P(X <= i) are built from one shared suffix-sum pass, so the identity
// tail(i) + cdf(i-1) == 1 holds exactly, not just up to rounding.
//
// Immutable after construction; safe to share across threads.
class Pmf {
 public:
  // Validates and rescales; the rescale is refused when |sum - 1| > 1e-9.
  static Pmf from_probs(const std::vector<double>& probs);
  static Pmf uniform(int M);
  // Masses proportional to ratio^(i-1) on 1..M, renormalized; 0 < ratio < 1.
  static Pmf truncated_geometric(int M, double ratio);

  int M() const noexcept { return static_cast<int>(probs_.size()); }

  // p_i for 1 <= i <= M; 0 beyond the support.
  double p(int i) const;
  // S_i = P(X >= i); tail(1) == 1, tail(i) == 0 for i > M.
  double tail(int i) const;
  // C_i = P(X <= i); cdf(0) == 0, cdf(i) == 1 for i >= M.
  double cdf(int i) const;

  const std::vector<double>& probs() const noexcept { return probs_; }

  // Inverse-cdf lookup: maps u in [0,1) to the value i with
  // cdf(i-1) <= u < cdf(i). O(log M).
  int sample_value(double u) const noexcept;

 private:
  explicit Pmf(std::vector<double> probs);

  std::vector<double> probs_;  // probs_[i-1] = p_i
  std::vector<double> tail_;   // tail_[i] = S_i, i = 1..M+1, tail_[0] unused
  std::vector<double> cdf_;    // cdf_[i] = C_i = 1 - tail_[i+1], i = 0..M
};

}  // namespace rkr
