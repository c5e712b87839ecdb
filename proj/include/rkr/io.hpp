// Copyright 2026 the rkr authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "rkr/pmf.hpp"

namespace rkr {

// Sequence ingestion (values are positive integers) and pmf serialization.
// Parse failures carry the 1-based line number.

// CSV: one value per row or comma-separated; blank lines skipped.
std::vector<int> read_sequence_csv(std::istream& in);
// JSONL: one {"x": <positive integer>} object per nonempty line.
std::vector<int> read_sequence_jsonl(std::istream& in);
// Dispatches on the extension: .jsonl / .ndjson use JSONL, anything else CSV.
std::vector<int> read_sequence_file(const std::string& path);

// Accepts {"probs": [...]} or {"family": "uniform"|"truncated_geometric",
// "M": ..., "ratio": ...}.
Pmf pmf_from_json(const nlohmann::json& spec);
Pmf load_pmf_file(const std::string& path);

nlohmann::json pmf_to_json(const Pmf& pmf);

// Pmf with support 1..max(values) and masses proportional to frequencies.
Pmf empirical_pmf(const std::vector<int>& values);

}  // namespace rkr
