// Copyright 2026 the rkr authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "rkr/pmf.hpp"

namespace rkr {

// Lovász Local Lemma feasibility check for "no window event anywhere": if
// each event has probability <= p and dependency degree <= d with 4dp <= 1,
// avoiding all of them has positive probability. Window i shares observations
// with window i' iff |i - i'| <= k, so the interior degree is 2k; the `paper`
// variant uses d = k, the `conservative` one d = 2k.

enum class LllVariant { paper, conservative };

struct LllVerdict {
  double event_prob = 0.0;  // per-window p
  int degree_paper = 0;
  int degree_conservative = 0;
  double constant_paper = 0.0;
  double constant_conservative = 0.0;
  bool condition_paper = false;
  bool condition_conservative = false;
  double threshold_paper = 0.0;
  double threshold_conservative = 0.0;
};

// C(k,j) = 4d (ke/j)^j max{((k-j)/k)^k, (j/k)^k} for j >= 1. For j = 0 the
// binomial is 1 and S^0 C^k <= 1, so the constant reduces to 4d.
double lll_constant(int k, int j, LllVariant variant);

// 1 / lll_constant: any p_{i0} strictly below it meets the variant's
// condition.
double lll_threshold(int k, int j, LllVariant variant);

LllVerdict lll_check(const Pmf& pmf, int i0, int k, int j);

}  // namespace rkr
