// Copyright 2026 the rkr authors
// SPDX-License-Identifier: Apache-2.0
#include "rkr/count_distribution.hpp"

#include <cmath>

#include "rkr/numeric.hpp"

namespace rkr {

const char* count_source_name(CountSource source) noexcept {
  switch (source) {
    case CountSource::exact: return "exact";
    case CountSource::empirical: return "empirical";
    case CountSource::poisson: return "poisson";
  }
  return "unknown";
}

double CountDistribution::mass(long long w) const {
  auto it = masses.find(w);
  return it == masses.end() ? 0.0 : it->second;
}

double CountDistribution::mean() const {
  KahanSum sum;
  for (const auto& [w, p] : masses) sum.add(static_cast<double>(w) * p);
  return sum.value();
}

double CountDistribution::total() const {
  KahanSum sum;
  for (const auto& [w, p] : masses) sum.add(p);
  sum.add(overflow);
  return sum.value();
}

long long CountDistribution::max_count() const {
  return masses.empty() ? -1 : masses.rbegin()->first;
}

double tv_distance(const CountDistribution& a, const CountDistribution& b) {
  KahanSum l1;
  for (const auto& [w, p] : a.masses) l1.add(std::abs(p - b.mass(w)));
  for (const auto& [w, p] : b.masses)
    if (!a.masses.count(w)) l1.add(p);
  l1.add(std::abs(a.overflow - b.overflow));
  return 0.5 * l1.value();
}

}  // namespace rkr
