// Copyright 2026 the rkr authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>

#include "rkr/count_distribution.hpp"
#include "rkr/pmf.hpp"
#include "rkr/records.hpp"
#include "rkr/scan.hpp"

namespace rkr {

// Exact ground truth by weighted exhaustive enumeration over all value tuples
// on the finite support. Every operation either enumerates fully or throws
// BudgetExceeded; there is no silent truncation. Weights are accumulated with
// compensated summation so 1e-12 comparisons stay honest at large budgets.

struct EnumBudget {
  std::uint64_t max_states = 100'000'000;

  // Default budget, overridden by the RKR_MAX_STATES environment variable.
  static EnumBudget from_env();
};

// P(the last entry of a (k+1)-window is a j-RkR), restricted to the target
// value i0 when given.
double exact_event_prob(const Pmf& pmf, int k, int j, std::optional<int> i0,
                        const EnumBudget& budget = EnumBudget::from_env());

// P(X_{n+1} is a j1-RkR | X_n is a j2-RkR) over (k+2)-tuples.
double exact_conditional_next(const Pmf& pmf, int k, int j1, int j2,
                              const EnumBudget& budget = EnumBudget::from_env());

// P(X_{n+1} = i0 is a j'-RkR | X_n = i0 is a j-RkR) with j' = j (stay) or
// j+1 (up); the exact counterpart of records::successive_prob.
double exact_successive_prob(const Pmf& pmf, int i0, int k, int j, Transition transition,
                             const EnumBudget& budget = EnumBudget::from_env());

// E(xi_i * xi_{i+m}) where xi_i indicates "i0 is a j-RkR at the end of the
// window starting at i"; enumerates the joint span of k+m+1 values.
double exact_pair_moment(const Pmf& pmf, int i0, int k, int j, int m,
                         const EnumBudget& budget = EnumBudget::from_env());

// Exact distribution of W = sum_{i=1..n} xi_i over sequences of length n+k.
CountDistribution exact_count_pmf(const Pmf& pmf, int i0, int k, int j, long long n,
                                  const EnumBudget& budget = EnumBudget::from_env());

// Exact P(W = 0); agrees with exact_count_pmf(...).mass(0) but prunes every
// branch as soon as an event fires.
double exact_no_event_prob(const Pmf& pmf, int i0, int k, int j, long long n,
                           const EnumBudget& budget = EnumBudget::from_env());

// Exact P(S_k >= s) for the fixed- or random-target scan statistic over
// sequences of length n.
double exact_scan_tail(const Pmf& pmf, const ScanTarget& target, int k, long long n, int s,
                       const EnumBudget& budget = EnumBudget::from_env());

// Sum of tuple weights over all M^length tuples; equals 1 up to rounding.
// Exposes the shared enumeration core for conservation tests.
double enumeration_total_weight(const Pmf& pmf, long long length,
                                const EnumBudget& budget = EnumBudget::from_env());

}  // namespace rkr
