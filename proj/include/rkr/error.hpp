// Copyright 2026 the rkr authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace rkr {

enum class errc {
  negative_mass,
  not_normalized,
  empty_support,
  bad_param,
  out_of_support,
  index_out_of_range,
  sequence_too_short,
  level_overflow,
  zero_marginal,
  budget_exceeded,
  zero_conditioning_event,
  no_conditioning_hits,
  parse_error,
  non_positive_value,
};

const char* errc_name(errc code) noexcept;

// Single exception type; code() tells callers (and the CLI exit-code mapper)
// which contract was violated.
class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void throw_error(errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace rkr
