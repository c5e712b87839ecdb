// Copyright 2026 the rkr authors
// SPDX-License-Identifier: Apache-2.0
#include "rkr/numeric.hpp"

namespace rkr {

double binom(int n, int r) noexcept {
  if (r < 0 || r > n || n < 0) return 0.0;
  if (r > n - r) r = n - r;
  // Prefix values n choose i are integers, so the divisions below are exact.
  std::uint64_t acc = 1;
  bool overflowed = false;
  for (int i = 1; i <= r; ++i) {
    std::uint64_t num = static_cast<std::uint64_t>(n - r + i);
    if (acc > UINT64_MAX / num) {
      overflowed = true;
      break;
    }
    acc = acc * num / static_cast<std::uint64_t>(i);
  }
  if (!overflowed) return static_cast<double>(acc);
  double d = 1.0;
  for (int i = 1; i <= r; ++i) d = d * static_cast<double>(n - r + i) / static_cast<double>(i);
  return d;
}

double ipow(double base, int e) noexcept {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace rkr
