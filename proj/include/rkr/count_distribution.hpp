// Copyright 2026 the rkr authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>

namespace rkr {

enum class CountSource { exact, empirical, poisson };

const char* count_source_name(CountSource source) noexcept;

// Distribution of the window-event count W together with its associated
// Poisson parameter lambda = n * p. Mass beyond the tracked support (only
// possible for truncated Poisson references) is aggregated in `overflow`.
struct CountDistribution {
  std::map<long long, double> masses;
  double overflow = 0.0;
  double lambda = 0.0;
  long long n = 0;
  CountSource source = CountSource::exact;

  double mass(long long w) const;
  // Mean over the tracked masses; overflow carries no count information.
  double mean() const;
  double total() const;
  long long max_count() const;  // largest w with tracked mass, -1 if none
};

// Total variation distance: half the l1 distance over the union of supports,
// with the two overflow lumps compared as one extra atom. Exact whenever at
// most one side is truncated and the other's support fits under the cut.
double tv_distance(const CountDistribution& a, const CountDistribution& b);

}  // namespace rkr
