// Copyright 2026 the rkr authors
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rkr/error.hpp"
#include "rkr/io.hpp"
#include "rkr/pmf.hpp"
#include "support/expect.hpp"

using rkr::errc;
using rkr::Pmf;
using rkr_test::throws_code;

namespace {
std::string data(const std::string& name) { return std::string(RKR_DATA_DIR) + "/" + name; }
std::ifstream open(const std::string& name) { return std::ifstream(data(name)); }
}  // namespace

TEST_CASE("comma-separated sequences parse in order") {
  std::ifstream in = open("seq1.csv");
  CHECK(rkr::read_sequence_csv(in) == std::vector<int>{2, 1, 2, 3, 1});
}

TEST_CASE("one-value-per-row sequences parse too") {
  std::ifstream in = open("seq2.csv");
  CHECK(rkr::read_sequence_csv(in) == std::vector<int>{1, 3, 2, 3, 1, 2});
}

TEST_CASE("jsonl sequences parse and dispatch by extension") {
  std::ifstream in = open("seq1.jsonl");
  CHECK(rkr::read_sequence_jsonl(in) == std::vector<int>{2, 1, 2, 3, 1});
  CHECK(rkr::read_sequence_file(data("seq1.jsonl")) == std::vector<int>{2, 1, 2, 3, 1});
  CHECK(rkr::read_sequence_file(data("seq1.csv")) == std::vector<int>{2, 1, 2, 3, 1});
}

TEST_CASE("malformed tokens report the line number") {
  try {
    rkr::read_sequence_file(data("bad_token.csv"));
    FAIL("expected a parse error");
  } catch (const rkr::Error& e) {
    CHECK(e.code() == errc::parse_error);
    CHECK(std::string(e.what()).find("line 1") != std::string::npos);
  }
}

TEST_CASE("non-positive values are rejected as data errors") {
  CHECK(throws_code(errc::non_positive_value,
                    [] { return rkr::read_sequence_file(data("nonpositive.csv")); }));
}

TEST_CASE("missing files are parse errors") {
  CHECK(throws_code(errc::parse_error, [] { return rkr::read_sequence_file(data("nope.csv")); }));
  CHECK(throws_code(errc::parse_error, [] { return rkr::load_pmf_file(data("nope.json")); }));
}

TEST_CASE("pmf files support both explicit masses and families") {
  const Pmf explicit_pmf = rkr::load_pmf_file(data("pmf532.json"));
  CHECK(explicit_pmf.M() == 3);
  CHECK(explicit_pmf.p(2) == 0.3);
  const Pmf family_pmf = rkr::load_pmf_file(data("pmf_geom.json"));
  const Pmf reference = Pmf::truncated_geometric(4, 0.5);
  REQUIRE(family_pmf.M() == 4);
  for (int i = 1; i <= 4; ++i) CHECK(family_pmf.p(i) == reference.p(i));
}

TEST_CASE("pmf json round-trips the mass vector") {
  const Pmf pmf = Pmf::from_probs({0.5, 0.3, 0.2});
  const nlohmann::json encoded = rkr::pmf_to_json(pmf);
  const Pmf back = rkr::pmf_from_json(encoded);
  REQUIRE(back.M() == pmf.M());
  for (int i = 1; i <= pmf.M(); ++i) CHECK(back.p(i) == pmf.p(i));
}

TEST_CASE("malformed pmf json is rejected") {
  CHECK(throws_code(errc::parse_error,
                    [] { return rkr::pmf_from_json(nlohmann::json{{"weights", 1}}); }));
  CHECK(throws_code(errc::not_normalized,
                    [] { return rkr::pmf_from_json(nlohmann::json{{"probs", {0.5, 0.4}}}); }));
}

TEST_CASE("empirical pmf uses frequencies on support 1..max") {
  const Pmf pmf = rkr::empirical_pmf({2, 1, 2, 3, 1});
  REQUIRE(pmf.M() == 3);
  CHECK(pmf.p(1) == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(pmf.p(2) == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(pmf.p(3) == doctest::Approx(0.2).epsilon(1e-15));
  const Pmf gap = rkr::empirical_pmf({3});
  REQUIRE(gap.M() == 3);
  CHECK(gap.p(1) == 0.0);
  CHECK(gap.p(2) == 0.0);
  CHECK(gap.p(3) == 1.0);
  CHECK(throws_code(errc::empty_support, [] { return rkr::empirical_pmf({}); }));
}
