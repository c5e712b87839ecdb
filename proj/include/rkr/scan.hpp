// Copyright 2026 the rkr authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "rkr/estimate.hpp"
#include "rkr/pmf.hpp"

namespace rkr {

// Sliding-window scan statistics. The fixed target counts values >= m in each
// window of k consecutive trials; the random target compares each window to
// its successor value, so the statistic equals the maximum RkR level.

struct ScanTarget {
  bool is_random = true;
  int m = 0;  // fixed target value, meaningful when !is_random

  static ScanTarget fixed(int target) { return ScanTarget{false, target}; }
  static ScanTarget random() { return ScanTarget{true, 0}; }
};

struct ScanResult {
  int statistic = 0;
  // 1-based start of the first maximizing window (fixed target) or the index
  // of the first observation attaining the maximal level (random target).
  long long argmax_index = 0;
  int k = 0;
  ScanTarget target;
};

// S_k = max_s #{i in [s, s+k-1] : X_i >= m}; O(len) sliding count.
ScanResult fixed_target_scan(const std::vector<int>& sequence, int m, int k);

// S_k = max_{i >= k+1} #{p in 1..k : X_{i-p} >= X_i}.
ScanResult random_target_scan(const std::vector<int>& sequence, int k);

enum class TailMethod { oracle, montecarlo };

// P(S_k >= s) for i.i.d. draws of length n: an exact value (oracle method) or
// an Estimate (montecarlo method, which requires cfg).
using ScanTailResult = std::variant<double, Estimate>;
ScanTailResult scan_tail(const Pmf& pmf, const ScanTarget& target, int k, long long n, int s,
                         TailMethod method, const std::optional<SimConfig>& cfg = std::nullopt);

}  // namespace rkr
