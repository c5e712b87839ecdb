// Copyright 2026 the rkr authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

namespace rkr {

// Kahan compensated accumulator; keeps long sums honest at 1e-12 tolerances.
class KahanSum {
 public:
  void add(double x) noexcept {
    double y = x - comp_;
    double t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const noexcept { return sum_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// binom(n, r) as a double; exact integer arithmetic while it fits in uint64.
double binom(int n, int r) noexcept;

// base^e by repeated multiplication; ipow(x, 0) == 1 for every x (0^0 = 1 by
// the empty-product convention the formulas rely on).
double ipow(double base, int e) noexcept;

}  // namespace rkr
