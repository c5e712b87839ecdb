// Copyright 2026 the rkr authors
// SPDX-License-Identifier: Apache-2.0
#include "rkr/scan.hpp"

#include <string>

#include "rkr/error.hpp"
#include "rkr/montecarlo.hpp"
#include "rkr/oracle.hpp"
#include "rkr/records.hpp"

namespace rkr {

ScanResult fixed_target_scan(const std::vector<int>& sequence, int m, int k) {
  if (k < 1) throw_error(errc::bad_param, "k must be >= 1");
  if (m < 1) throw_error(errc::bad_param, "target value m must be >= 1");
  const long long len = static_cast<long long>(sequence.size());
  if (len < k)
    throw_error(errc::sequence_too_short, "need at least k=" + std::to_string(k) +
                                              " values, got " + std::to_string(len));
  ScanResult result;
  result.k = k;
  result.target = ScanTarget::fixed(m);
  int count = 0;
  for (long long t = 0; t < k; ++t)
    if (sequence[static_cast<std::size_t>(t)] >= m) ++count;
  result.statistic = count;
  result.argmax_index = 1;
  for (long long s = 1; s + k <= len; ++s) {
    if (sequence[static_cast<std::size_t>(s - 1)] >= m) --count;
    if (sequence[static_cast<std::size_t>(s + k - 1)] >= m) ++count;
    if (count > result.statistic) {
      result.statistic = count;
      result.argmax_index = s + 1;
    }
  }
  return result;
}

ScanResult random_target_scan(const std::vector<int>& sequence, int k) {
  const EventSeries series = detect_events(sequence, k);
  ScanResult result;
  result.k = k;
  result.target = ScanTarget::random();
  result.statistic = -1;
  for (const auto& [index, level] : series.levels) {
    if (level > result.statistic) {
      result.statistic = level;
      result.argmax_index = index;
    }
  }
  return result;
}

ScanTailResult scan_tail(const Pmf& pmf, const ScanTarget& target, int k, long long n, int s,
                         TailMethod method, const std::optional<SimConfig>& cfg) {
  if (method == TailMethod::oracle) return exact_scan_tail(pmf, target, k, n, s);
  if (!cfg) throw_error(errc::bad_param, "montecarlo scan tail requires a SimConfig");
  return estimate_scan_tail(pmf, target, k, n, s, *cfg);
}

}  // namespace rkr
