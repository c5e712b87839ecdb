// Copyright 2026 the rkr authors
// SPDX-License-Identifier: Apache-2.0
#include "rkr/lll.hpp"

#include <algorithm>
#include <numbers>

#include "rkr/error.hpp"
#include "rkr/numeric.hpp"
#include "rkr/records.hpp"

namespace rkr {

namespace {

void check_levels(int k, int j) {
  if (k < 1) throw_error(errc::bad_param, "k must be >= 1");
  if (j < 0 || j > k) throw_error(errc::bad_param, "j must lie in 0..k");
}

// Degree-independent part, computed once so the two variants differ by the
// exact factor 2 (and the thresholds by exactly 1/2).
double constant_rest(int k, int j) {
  if (j == 0) return 1.0;
  const double binomial_bound = ipow(static_cast<double>(k) * std::numbers::e / j, j);
  const double tail_bound = std::max(ipow(static_cast<double>(k - j) / k, k),
                                     ipow(static_cast<double>(j) / k, k));
  return binomial_bound * tail_bound;
}

}  // namespace

double lll_constant(int k, int j, LllVariant variant) {
  check_levels(k, j);
  const int d = variant == LllVariant::paper ? k : 2 * k;
  return (4.0 * d) * constant_rest(k, j);
}

double lll_threshold(int k, int j, LllVariant variant) {
  return 1.0 / lll_constant(k, j, variant);
}

LllVerdict lll_check(const Pmf& pmf, int i0, int k, int j) {
  check_levels(k, j);
  LllVerdict v;
  v.event_prob = window_event_prob(pmf, RecordQuery{k, j, i0, std::nullopt});
  v.degree_paper = k;
  v.degree_conservative = 2 * k;
  v.constant_paper = lll_constant(k, j, LllVariant::paper);
  v.constant_conservative = lll_constant(k, j, LllVariant::conservative);
  v.condition_paper = 4.0 * v.degree_paper * v.event_prob <= 1.0;
  v.condition_conservative = 4.0 * v.degree_conservative * v.event_prob <= 1.0;
  v.threshold_paper = lll_threshold(k, j, LllVariant::paper);
  v.threshold_conservative = lll_threshold(k, j, LllVariant::conservative);
  return v;
}

}  // namespace rkr
