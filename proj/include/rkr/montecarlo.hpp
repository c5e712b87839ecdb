// Copyright 2026 the rkr authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rkr/count_distribution.hpp"
#include "rkr/estimate.hpp"
#include "rkr/pmf.hpp"
#include "rkr/scan.hpp"

namespace rkr {

// Seeded Monte Carlo estimation. Each replication draws from its own
// counter-derived substream keyed on (seed, replication index), so splitting
// the replication range across workers cannot change any tally; results are
// bitwise identical for every workers setting.

std::vector<int> simulate_sequence(const Pmf& pmf, long long length, std::uint64_t seed,
                                   std::uint64_t stream_id);

// Fraction of replications whose fresh (k+1)-window ends in a j-RkR (equal to
// i0 when given), with Wilson 95% interval.
Estimate estimate_event_prob(const Pmf& pmf, int k, int j, std::optional<int> i0,
                             const SimConfig& cfg);

// Rejection estimator of P(level j1 at n+1 | level j2 at n) over
// (k+2)-windows. Throws NoConditioningHits when no replication hits the
// conditioning event.
Estimate estimate_conditional_next(const Pmf& pmf, int k, int j1, int j2, const SimConfig& cfg);

// Empirical histogram of the event count W over sequences of length n+k.
CountDistribution estimate_count_pmf(const Pmf& pmf, int i0, int k, int j, long long n,
                                     const SimConfig& cfg);

// Fraction of simulated length-n sequences with scan statistic >= s.
Estimate estimate_scan_tail(const Pmf& pmf, const ScanTarget& target, int k, long long n, int s,
                            const SimConfig& cfg);

}  // namespace rkr
