// Copyright 2026 the rkr authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

namespace rkr {

// Replication count, seed, and worker hint for the Monte Carlo engine.
// workers is advisory: it partitions work but never changes results.
struct SimConfig {
  std::uint64_t seed = 0;
  long long replications = 1;
  long long sequence_length = 0;  // 0 = derived from the query
  int workers = 1;
};

// Point estimate with Wilson 95% interval. std_error is the plug-in binomial
// standard error sqrt(p(1-p)/n); for conditional estimates n is the number of
// replications where the conditioning event occurred.
struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  long long replications = 0;
};

}  // namespace rkr
