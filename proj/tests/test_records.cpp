// Copyright 2026 the rkr authors
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <optional>
#include <vector>

#include "rkr/error.hpp"
#include "rkr/numeric.hpp"
#include "rkr/pmf.hpp"
#include "rkr/records.hpp"
#include "support/expect.hpp"

using rkr::errc;
using rkr::Pmf;
using rkr::RecordQuery;
using rkr_test::throws_code;

namespace {
const std::vector<int> kSeq{2, 1, 2, 3, 1};
}

TEST_CASE("rkr_level counts ties as covering observations") {
  CHECK(rkr::rkr_level(kSeq, 3, 2) == 1);  // preceding {2,1}: one value >= 2
  CHECK(rkr::rkr_level(kSeq, 4, 2) == 0);  // preceding {1,2}: none >= 3
  CHECK(rkr::rkr_level(kSeq, 5, 2) == 2);  // preceding {2,3}: both >= 1
  CHECK(rkr::rkr_level(kSeq, 2, 1) == 1);  // 2 >= 1
}

TEST_CASE("rkr_level rejects indices without a full look-back window") {
  CHECK(throws_code(errc::index_out_of_range, [] { return rkr::rkr_level(kSeq, 2, 2); }));
  CHECK(throws_code(errc::index_out_of_range, [] { return rkr::rkr_level(kSeq, 6, 2); }));
  CHECK(throws_code(errc::index_out_of_range, [] { return rkr::rkr_level(kSeq, 0, 1); }));
}

TEST_CASE("detect_events lists levels from index k+1 on") {
  const rkr::EventSeries series = rkr::detect_events(kSeq, 2);
  REQUIRE(series.levels.size() == 3);
  CHECK(series.levels[0] == std::pair<long long, int>{3, 1});
  CHECK(series.levels[1] == std::pair<long long, int>{4, 0});
  CHECK(series.levels[2] == std::pair<long long, int>{5, 2});
}

TEST_CASE("detect_events on constant input reports level k everywhere") {
  const rkr::EventSeries series = rkr::detect_events({5, 5, 5, 5, 5}, 2);
  for (const auto& [index, level] : series.levels) CHECK(level == 2);
  CHECK(series.levels.size() == 3);
}

TEST_CASE("detect_events needs at least k+1 observations") {
  CHECK(throws_code(errc::sequence_too_short, [] { return rkr::detect_events({1, 2}, 2); }));
  CHECK(throws_code(errc::sequence_too_short, [] { return rkr::detect_events({}, 1); }));
}

TEST_CASE("window event probability pinned values") {
  const Pmf mix = Pmf::from_probs({0.5, 0.3, 0.2});
  // binom(2,1) * S_2 * C_1 * p_2 = 2 * 0.5 * 0.5 * 0.3
  CHECK(rkr::window_event_prob(mix, {2, 1, 2, std::nullopt}) == doctest::Approx(0.15).epsilon(1e-15));
  const Pmf u2 = Pmf::uniform(2);
  CHECK(rkr::window_event_prob(u2, {1, 1, 2, std::nullopt}) == doctest::Approx(0.25).epsilon(1e-15));
  // i0 = 1 with j < k forces an empty lower tail.
  CHECK(rkr::window_event_prob(u2, {2, 1, 1, std::nullopt}) == 0.0);
}

TEST_CASE("window nonevent probability complements the event probability") {
  for (const Pmf& pmf : {Pmf::uniform(3), Pmf::from_probs({0.5, 0.3, 0.2})}) {
    for (int k = 1; k <= 3; ++k)
      for (int j = 0; j <= k; ++j)
        for (int i0 = 1; i0 <= pmf.M(); ++i0) {
          const RecordQuery q{k, j, i0, std::nullopt};
          CHECK(rkr::window_nonevent_prob(pmf, q) ==
                doctest::Approx(1.0 - rkr::window_event_prob(pmf, q)).epsilon(1e-14));
        }
  }
}

TEST_CASE("union bound scales the window probability and caps at one") {
  const Pmf u2 = Pmf::uniform(2);
  const rkr::UnionBound small = rkr::first_n_union_bound(u2, {1, 1, 2, 3});
  CHECK(small.raw == doctest::Approx(2 * 0.25).epsilon(1e-15));
  CHECK(small.capped == small.raw);
  const rkr::UnionBound big = rkr::first_n_union_bound(u2, {1, 1, 2, 9});
  CHECK(big.raw == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(big.capped == 1.0);
}

TEST_CASE("query validation errors") {
  const Pmf u2 = Pmf::uniform(2);
  CHECK(throws_code(errc::bad_param,
                    [&] { return rkr::window_event_prob(u2, {0, 0, 1, std::nullopt}); }));
  CHECK(throws_code(errc::bad_param,
                    [&] { return rkr::window_event_prob(u2, {2, 3, 1, std::nullopt}); }));
  CHECK(throws_code(errc::bad_param,
                    [&] { return rkr::window_event_prob(u2, {2, 1, std::nullopt, std::nullopt}); }));
  CHECK(throws_code(errc::out_of_support,
                    [&] { return rkr::window_event_prob(u2, {2, 1, 0, std::nullopt}); }));
  CHECK(throws_code(errc::out_of_support,
                    [&] { return rkr::window_event_prob(u2, {2, 1, 3, std::nullopt}); }));
  CHECK(throws_code(errc::bad_param, [&] { return rkr::first_n_union_bound(u2, {2, 1, 2, 2}); }));
  CHECK(throws_code(errc::bad_param,
                    [&] { return rkr::first_n_union_bound(u2, {2, 1, 2, std::nullopt}); }));
}

TEST_CASE("successive transition probabilities, both variants") {
  const Pmf u2 = Pmf::uniform(2);
  const RecordQuery top{1, 1, 2, std::nullopt};
  // stay: published factor S_2 p_2 vs exchangeable (j/k) p_2.
  CHECK(rkr::successive_prob(u2, top, rkr::Transition::stay_j, rkr::SuccessiveVariant::paper) ==
        doctest::Approx(0.25).epsilon(1e-15));
  CHECK(rkr::successive_prob(u2, top, rkr::Transition::stay_j,
                             rkr::SuccessiveVariant::exchangeable) ==
        doctest::Approx(0.5).epsilon(1e-15));
  const RecordQuery bottom{1, 0, 2, std::nullopt};
  // up: published factor C_1 p_2 vs exchangeable ((k-j)/k) p_2.
  CHECK(rkr::successive_prob(u2, bottom, rkr::Transition::up_to_j_plus_1,
                             rkr::SuccessiveVariant::paper) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(rkr::successive_prob(u2, bottom, rkr::Transition::up_to_j_plus_1,
                             rkr::SuccessiveVariant::exchangeable) ==
        doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("moving up from level k is impossible") {
  const Pmf u2 = Pmf::uniform(2);
  CHECK(throws_code(errc::level_overflow, [&] {
    return rkr::successive_prob(u2, {1, 1, 2, std::nullopt}, rkr::Transition::up_to_j_plus_1,
                                rkr::SuccessiveVariant::paper);
  }));
}

TEST_CASE("marginal probability pinned values and sum over i0") {
  const Pmf u3 = Pmf::uniform(3);
  CHECK(rkr::marginal_prob(u3, 2, 1) == doctest::Approx(8.0 / 27.0).epsilon(1e-15));
  const Pmf u2 = Pmf::uniform(2);
  CHECK(rkr::marginal_prob(u2, 1, 0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(rkr::marginal_prob(u2, 1, 1) == doctest::Approx(0.75).epsilon(1e-15));
  const Pmf mix = Pmf::from_probs({0.5, 0.3, 0.2});
  CHECK(rkr::marginal_prob(mix, 2, 1) == doctest::Approx(0.214).epsilon(1e-15));
  rkr::KahanSum by_value;
  for (int i0 = 1; i0 <= 3; ++i0)
    by_value.add(rkr::window_event_prob(mix, {2, 1, i0, std::nullopt}));
  CHECK(rkr::marginal_prob(mix, 2, 1) == doctest::Approx(by_value.value()).epsilon(1e-14));
}

TEST_CASE("levels partition the window event") {
  for (const Pmf& pmf :
       {Pmf::uniform(2), Pmf::uniform(4), Pmf::from_probs({0.5, 0.3, 0.2}),
        Pmf::truncated_geometric(4, 0.5)}) {
    for (int k = 1; k <= 4; ++k) {
      rkr::KahanSum total;
      for (int j = 0; j <= k; ++j) total.add(rkr::marginal_prob(pmf, k, j));
      CHECK(total.value() == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("posterior pinned values and normalization") {
  const Pmf mix = Pmf::from_probs({0.5, 0.3, 0.2});
  const std::vector<double> q = rkr::posterior(mix, 2, 1);
  REQUIRE(q.size() == 3);
  CHECK(q[0] == 0.0);
  CHECK(q[1] == doctest::Approx(0.15 / 0.214).epsilon(1e-14));
  CHECK(q[2] == doctest::Approx(0.064 / 0.214).epsilon(1e-14));
  rkr::KahanSum total;
  for (double v : q) total.add(v);
  CHECK(total.value() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("posterior with an impossible level reports zero marginal") {
  // With a single support value every observation is tied to its predecessors,
  // so level 0 never occurs.
  CHECK(throws_code(errc::zero_marginal, [] { return rkr::posterior(Pmf::uniform(1), 1, 0); }));
}

TEST_CASE("prediction pinned values") {
  const Pmf u2 = Pmf::uniform(2);
  CHECK(rkr::prediction_prob(u2, 1, 1, rkr::PredictionVariant::corrected) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(rkr::prediction_prob(u2, 1, 1, rkr::PredictionVariant::paper) ==
        doctest::Approx(7.0 / 12.0).epsilon(1e-15));
  CHECK(rkr::prediction_prob(u2, 2, 1, rkr::PredictionVariant::corrected) ==
        doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("prediction handles zero-probability levels without dividing by zero") {
  // uniform(1): level j=0 has zero marginal but prediction for j=1..k must
  // still evaluate; all ratios with zero denominators contribute nothing.
  const Pmf u1 = Pmf::uniform(1);
  CHECK(rkr::prediction_prob(u1, 2, 2, rkr::PredictionVariant::corrected) ==
        doctest::Approx(1.0).epsilon(1e-14));
}
