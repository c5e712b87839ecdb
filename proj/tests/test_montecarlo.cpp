// Copyright 2026 the rkr authors
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "rkr/error.hpp"
#include "rkr/montecarlo.hpp"
#include "rkr/oracle.hpp"
#include "rkr/pmf.hpp"
#include "rkr/scan.hpp"
#include "support/expect.hpp"

using rkr::errc;
using rkr::Estimate;
using rkr::Pmf;
using rkr::SimConfig;
using rkr_test::throws_code;

namespace {

bool same_estimate(const Estimate& a, const Estimate& b) {
  return a.value == b.value && a.std_error == b.std_error && a.ci_low == b.ci_low &&
         a.ci_high == b.ci_high && a.replications == b.replications;
}

}  // namespace

TEST_CASE("simulated sequences are reproducible and in-support") {
  const Pmf pmf = Pmf::from_probs({0.5, 0.3, 0.2});
  const std::vector<int> a = rkr::simulate_sequence(pmf, 50, 123, 7);
  const std::vector<int> b = rkr::simulate_sequence(pmf, 50, 123, 7);
  CHECK(a == b);
  CHECK(a.size() == 50);
  for (int v : a) {
    CHECK(v >= 1);
    CHECK(v <= 3);
  }
  const std::vector<int> other_stream = rkr::simulate_sequence(pmf, 50, 123, 8);
  const std::vector<int> other_seed = rkr::simulate_sequence(pmf, 50, 124, 7);
  CHECK(a != other_stream);
  CHECK(a != other_seed);
}

TEST_CASE("event estimates agree with the oracle within four standard errors") {
  const Pmf u3 = Pmf::uniform(3);
  const SimConfig cfg{42, 20000, 0, 1};
  const Estimate est = rkr::estimate_event_prob(u3, 2, 1, std::nullopt, cfg);
  const double exact = rkr::exact_event_prob(u3, 2, 1, std::nullopt);
  CHECK(std::abs(est.value - exact) <= 4.0 * est.std_error);
  CHECK(est.replications == 20000);
  CHECK(est.ci_low <= est.value);
  CHECK(est.value <= est.ci_high);
  CHECK(est.ci_low >= 0.0);
  CHECK(est.ci_high <= 1.0);
}

TEST_CASE("worker count never changes any reported number") {
  const Pmf mix = Pmf::from_probs({0.5, 0.3, 0.2});
  const Estimate serial = rkr::estimate_event_prob(mix, 2, 1, 2, SimConfig{9, 30000, 0, 1});
  for (int workers : {2, 3, 4, 7}) {
    const Estimate parallel =
        rkr::estimate_event_prob(mix, 2, 1, 2, SimConfig{9, 30000, 0, workers});
    CHECK(same_estimate(serial, parallel));
  }
  const rkr::CountDistribution count1 =
      rkr::estimate_count_pmf(mix, 2, 2, 1, 5, SimConfig{9, 20000, 0, 1});
  const rkr::CountDistribution count4 =
      rkr::estimate_count_pmf(mix, 2, 2, 1, 5, SimConfig{9, 20000, 0, 4});
  CHECK(count1.masses == count4.masses);
}

TEST_CASE("same seed reproduces, different seed varies") {
  const Pmf u2 = Pmf::uniform(2);
  const Estimate a = rkr::estimate_event_prob(u2, 1, 1, std::nullopt, SimConfig{5, 10000, 0, 2});
  const Estimate b = rkr::estimate_event_prob(u2, 1, 1, std::nullopt, SimConfig{5, 10000, 0, 2});
  const Estimate c = rkr::estimate_event_prob(u2, 1, 1, std::nullopt, SimConfig{6, 10000, 0, 2});
  CHECK(same_estimate(a, b));
  CHECK(a.value != c.value);
}

TEST_CASE("conditional estimator conditions on the hit subsample") {
  const Pmf u2 = Pmf::uniform(2);
  const SimConfig cfg{21, 50000, 0, 2};
  const Estimate est = rkr::estimate_conditional_next(u2, 1, 1, 1, cfg);
  CHECK(std::abs(est.value - 2.0 / 3.0) <= 4.0 * est.std_error);
  CHECK(est.replications == 50000);
  // Conditioning on level 1 (probability 3/4) shrinks the effective sample, so
  // the interval is wider than the unconditional one at the same size.
  const Estimate uncond = rkr::estimate_event_prob(u2, 1, 1, std::nullopt, cfg);
  CHECK(est.std_error > 0.0);
  CHECK(uncond.std_error > 0.0);
}

TEST_CASE("impossible conditioning events surface as no hits") {
  // uniform(1) never yields level 0.
  CHECK(throws_code(errc::no_conditioning_hits, [] {
    return rkr::estimate_conditional_next(Pmf::uniform(1), 1, 1, 0, SimConfig{3, 200, 0, 1});
  }));
}

TEST_CASE("degenerate probabilities keep estimates clamped") {
  // uniform(1), k=1, j=1: every observation ties its predecessor, so the event
  // always fires.
  const Estimate sure = rkr::estimate_event_prob(Pmf::uniform(1), 1, 1, std::nullopt,
                                                 SimConfig{17, 5000, 0, 1});
  CHECK(sure.value == 1.0);
  CHECK(sure.ci_high == 1.0);
  CHECK(sure.ci_low < 1.0);  // Wilson interval keeps a sliver of doubt
  const Estimate never = rkr::estimate_event_prob(Pmf::uniform(1), 1, 0, std::nullopt,
                                                  SimConfig{17, 5000, 0, 1});
  CHECK(never.value == 0.0);
  CHECK(never.ci_low == 0.0);
  CHECK(never.ci_high > 0.0);
}

TEST_CASE("empirical count distribution is a proper distribution near the oracle") {
  const Pmf u2 = Pmf::uniform(2);
  const rkr::CountDistribution emp = rkr::estimate_count_pmf(u2, 2, 1, 1, 3, SimConfig{33, 40000, 0, 4});
  CHECK(emp.total() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(emp.source == rkr::CountSource::empirical);
  CHECK(emp.n == 3);
  const rkr::CountDistribution exact = rkr::exact_count_pmf(u2, 2, 1, 1, 3);
  CHECK(rkr::tv_distance(emp, exact) < 0.01);
}

TEST_CASE("scan tail estimates straddle the exact tail") {
  const Pmf u2 = Pmf::uniform(2);
  const rkr::ScanTarget target = rkr::ScanTarget::fixed(2);
  const Estimate est = rkr::estimate_scan_tail(u2, target, 2, 3, 2, SimConfig{55, 30000, 0, 2});
  CHECK(std::abs(est.value - 0.375) <= 4.0 * est.std_error);
}

TEST_CASE("configuration is validated") {
  const Pmf u2 = Pmf::uniform(2);
  CHECK(throws_code(errc::bad_param, [&] {
    return rkr::estimate_event_prob(u2, 1, 1, std::nullopt, SimConfig{1, 0, 0, 1});
  }));
  CHECK(throws_code(errc::bad_param, [&] {
    return rkr::estimate_event_prob(u2, 1, 1, std::nullopt, SimConfig{1, 100, 0, 0});
  }));
}
