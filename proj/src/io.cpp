// Copyright 2026 the rkr authors
// SPDX-License-Identifier: Apache-2.0
#include "rkr/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "rkr/error.hpp"

namespace rkr {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

int parse_value(const std::string& token, long long line) {
  std::size_t consumed = 0;
  long long value = 0;
  try {
    value = std::stoll(token, &consumed);
  } catch (const std::exception&) {
    throw_error(errc::parse_error,
                "line " + std::to_string(line) + ": \"" + token + "\" is not an integer");
  }
  if (consumed != token.size())
    throw_error(errc::parse_error,
                "line " + std::to_string(line) + ": \"" + token + "\" is not an integer");
  if (value < 1)
    throw_error(errc::non_positive_value,
                "line " + std::to_string(line) + ": values must be >= 1, got " + token);
  if (value > INT32_MAX)
    throw_error(errc::parse_error,
                "line " + std::to_string(line) + ": value " + token + " too large");
  return static_cast<int>(value);
}

}  // namespace

std::vector<int> read_sequence_csv(std::istream& in) {
  std::vector<int> out;
  std::string line;
  long long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::stringstream fields(line);
    std::string token;
    while (std::getline(fields, token, ',')) {
      token = trim(token);
      if (token.empty()) continue;
      out.push_back(parse_value(token, line_no));
    }
  }
  return out;
}

std::vector<int> read_sequence_jsonl(std::istream& in) {
  std::vector<int> out;
  std::string line;
  long long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    nlohmann::json row = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (row.is_discarded() || !row.is_object() || !row.contains("x"))
      throw_error(errc::parse_error,
                  "line " + std::to_string(line_no) + ": expected an object with field \"x\"");
    const nlohmann::json& x = row["x"];
    if (!x.is_number_integer())
      throw_error(errc::parse_error,
                  "line " + std::to_string(line_no) + ": field \"x\" must be an integer");
    const long long value = x.get<long long>();
    if (value < 1)
      throw_error(errc::non_positive_value, "line " + std::to_string(line_no) +
                                                ": values must be >= 1, got " +
                                                std::to_string(value));
    if (value > INT32_MAX)
      throw_error(errc::parse_error, "line " + std::to_string(line_no) + ": value too large");
    out.push_back(static_cast<int>(value));
  }
  return out;
}

std::vector<int> read_sequence_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw_error(errc::parse_error, "cannot open input file " + path);
  const bool jsonl = path.ends_with(".jsonl") || path.ends_with(".ndjson");
  return jsonl ? read_sequence_jsonl(in) : read_sequence_csv(in);
}

Pmf pmf_from_json(const nlohmann::json& spec) {
  if (!spec.is_object()) throw_error(errc::parse_error, "pmf spec must be a JSON object");
  if (spec.contains("probs")) {
    const nlohmann::json& probs = spec["probs"];
    if (!probs.is_array()) throw_error(errc::parse_error, "\"probs\" must be an array");
    std::vector<double> values;
    values.reserve(probs.size());
    for (const auto& p : probs) {
      if (!p.is_number()) throw_error(errc::parse_error, "\"probs\" entries must be numbers");
      values.push_back(p.get<double>());
    }
    return Pmf::from_probs(values);
  }
  if (spec.contains("family")) {
    const std::string family = spec["family"].get<std::string>();
    if (!spec.contains("M") || !spec["M"].is_number_integer())
      throw_error(errc::parse_error, "family pmf requires an integer \"M\"");
    const int M = spec["M"].get<int>();
    if (family == "uniform") return Pmf::uniform(M);
    if (family == "truncated_geometric") {
      if (!spec.contains("ratio") || !spec["ratio"].is_number())
        throw_error(errc::parse_error, "truncated_geometric requires a numeric \"ratio\"");
      return Pmf::truncated_geometric(M, spec["ratio"].get<double>());
    }
    throw_error(errc::parse_error, "unknown pmf family \"" + family + "\"");
  }
  throw_error(errc::parse_error, "pmf spec needs either \"probs\" or \"family\"");
}

Pmf load_pmf_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw_error(errc::parse_error, "cannot open pmf file " + path);
  nlohmann::json spec = nlohmann::json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (spec.is_discarded()) throw_error(errc::parse_error, "invalid JSON in pmf file " + path);
  return pmf_from_json(spec);
}

nlohmann::json pmf_to_json(const Pmf& pmf) {
  return nlohmann::json{{"probs", pmf.probs()}};
}

Pmf empirical_pmf(const std::vector<int>& values) {
  if (values.empty()) throw_error(errc::empty_support, "empirical pmf needs at least one value");
  const int M = *std::max_element(values.begin(), values.end());
  std::vector<double> probs(static_cast<std::size_t>(M), 0.0);
  const double unit = 1.0 / static_cast<double>(values.size());
  for (int v : values) probs[static_cast<std::size_t>(v - 1)] += unit;
  return Pmf::from_probs(probs);
}

}  // namespace rkr
