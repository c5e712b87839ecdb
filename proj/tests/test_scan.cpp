// Copyright 2026 the rkr authors
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <optional>
#include <variant>
#include <vector>

#include "rkr/error.hpp"
#include "rkr/montecarlo.hpp"
#include "rkr/oracle.hpp"
#include "rkr/pmf.hpp"
#include "rkr/records.hpp"
#include "rkr/scan.hpp"
#include "support/expect.hpp"

using rkr::errc;
using rkr::Pmf;
using rkr::ScanTarget;
using rkr_test::throws_code;

namespace {

// Quadratic reference implementation of the fixed-target scan.
int naive_fixed_scan(const std::vector<int>& sequence, int m, int k) {
  int best = 0;
  for (std::size_t start = 0; start + k <= sequence.size(); ++start) {
    int count = 0;
    for (int offset = 0; offset < k; ++offset) count += sequence[start + offset] >= m ? 1 : 0;
    best = std::max(best, count);
  }
  return best;
}

}  // namespace

TEST_CASE("fixed-target scan pinned examples") {
  const std::vector<int> seq{1, 3, 2, 3, 1, 2};
  const rkr::ScanResult r3 = rkr::fixed_target_scan(seq, 2, 3);
  CHECK(r3.statistic == 3);
  CHECK(r3.argmax_index == 2);  // window {3,2,3}
  CHECK(r3.k == 3);
  CHECK_FALSE(r3.target.is_random);
  CHECK(r3.target.m == 2);
  const rkr::ScanResult r2 = rkr::fixed_target_scan(seq, 2, 2);
  CHECK(r2.statistic == 2);
  CHECK(r2.argmax_index == 2);  // first maximizing window {3,2}
}

TEST_CASE("random-target scan equals the maximal record level") {
  const std::vector<int> seq{2, 1, 2, 3, 1};
  const rkr::ScanResult r = rkr::random_target_scan(seq, 2);
  CHECK(r.statistic == 2);
  CHECK(r.argmax_index == 5);
  CHECK(r.target.is_random);
  const rkr::EventSeries series = rkr::detect_events(seq, 2);
  int best = 0;
  for (const auto& [index, level] : series.levels) best = std::max(best, level);
  CHECK(r.statistic == best);
}

TEST_CASE("fixed-target scan matches a naive recount on random data") {
  const Pmf pmf = Pmf::from_probs({0.5, 0.3, 0.2});
  for (int rep = 0; rep < 100; ++rep) {
    const long long length = 5 + (rep * 7) % 60;
    const std::vector<int> seq = rkr::simulate_sequence(pmf, length, 99, rep);
    for (int k : {1, 2, 5}) {
      if (length < k) continue;
      for (int m = 1; m <= 3; ++m)
        CHECK(rkr::fixed_target_scan(seq, m, k).statistic == naive_fixed_scan(seq, m, k));
    }
  }
}

TEST_CASE("random-target scan agrees with detect_events on random data") {
  const Pmf pmf = Pmf::uniform(4);
  for (int rep = 0; rep < 100; ++rep) {
    const std::vector<int> seq = rkr::simulate_sequence(pmf, 40, 123, rep);
    for (int k : {1, 2, 3}) {
      const rkr::EventSeries series = rkr::detect_events(seq, k);
      int best = 0;
      for (const auto& [index, level] : series.levels) best = std::max(best, level);
      CHECK(rkr::random_target_scan(seq, k).statistic == best);
    }
  }
}

TEST_CASE("argmax is the first maximizing position") {
  // Two windows reach the maximum; the earlier one wins.
  const std::vector<int> seq{2, 2, 1, 2, 2};
  CHECK(rkr::fixed_target_scan(seq, 2, 2).argmax_index == 1);
  const std::vector<int> flat{3, 3, 3, 3};
  CHECK(rkr::random_target_scan(flat, 1).argmax_index == 2);  // first full window
}

TEST_CASE("scan input validation") {
  CHECK(throws_code(errc::sequence_too_short, [] { return rkr::fixed_target_scan({1}, 1, 2); }));
  CHECK(throws_code(errc::sequence_too_short, [] { return rkr::random_target_scan({1, 2}, 2); }));
  CHECK(throws_code(errc::bad_param, [] { return rkr::fixed_target_scan({1, 2}, 0, 1); }));
  CHECK(throws_code(errc::bad_param, [] { return rkr::fixed_target_scan({1, 2}, 1, 0); }));
  CHECK(throws_code(errc::bad_param, [] { return rkr::random_target_scan({1, 2}, 0); }));
}

TEST_CASE("scan_tail dispatches to the oracle") {
  const Pmf u2 = Pmf::uniform(2);
  const rkr::ScanTailResult result =
      rkr::scan_tail(u2, ScanTarget::fixed(2), 2, 3, 2, rkr::TailMethod::oracle);
  REQUIRE(std::holds_alternative<double>(result));
  CHECK(std::get<double>(result) == 0.375);
}

TEST_CASE("scan_tail dispatches to Monte Carlo when configured") {
  const Pmf u2 = Pmf::uniform(2);
  const rkr::ScanTailResult result = rkr::scan_tail(
      u2, ScanTarget::random(), 2, 4, 2, rkr::TailMethod::montecarlo, rkr::SimConfig{8, 20000, 0, 2});
  REQUIRE(std::holds_alternative<rkr::Estimate>(result));
  const rkr::Estimate est = std::get<rkr::Estimate>(result);
  const double exact = rkr::exact_scan_tail(u2, ScanTarget::random(), 2, 4, 2);
  CHECK(std::abs(est.value - exact) <= 4.0 * est.std_error);
}

TEST_CASE("scan_tail without a simulation config is a usage error") {
  CHECK(throws_code(errc::bad_param, [] {
    return rkr::scan_tail(Pmf::uniform(2), ScanTarget::random(), 2, 4, 2,
                          rkr::TailMethod::montecarlo);
  }));
}

TEST_CASE("oracle tail equals a brute-force scan over simulated mass") {
  // Cross-check tail values against direct enumeration via the scan functions
  // themselves: P(S >= s) accumulated over all 3^4 sequences.
  const Pmf mix = Pmf::from_probs({0.5, 0.3, 0.2});
  const int n = 4, k = 2, m = 2;
  std::vector<int> seq(n);
  double tail_mass[4] = {0, 0, 0, 0};  // indexed by statistic value 0..k
  for (int code = 0; code < 81; ++code) {
    int rest = code;
    double weight = 1.0;
    for (int pos = 0; pos < n; ++pos) {
      seq[pos] = rest % 3 + 1;
      rest /= 3;
      weight *= mix.p(seq[pos]);
    }
    tail_mass[rkr::fixed_target_scan(seq, m, k).statistic] += weight;
  }
  for (int s = 1; s <= k; ++s) {
    double expected = 0.0;
    for (int v = s; v <= k; ++v) expected += tail_mass[v];
    CHECK(rkr::exact_scan_tail(mix, ScanTarget::fixed(m), k, n, s) ==
          doctest::Approx(expected).epsilon(1e-12));
  }
}
