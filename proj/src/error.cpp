// Copyright 2026 the rkr authors
// SPDX-License-Identifier: Apache-2.0
#include "rkr/error.hpp"

namespace rkr {

const char* errc_name(errc code) noexcept {
  switch (code) {
    case errc::negative_mass: return "NegativeMass";
    case errc::not_normalized: return "NotNormalized";
    case errc::empty_support: return "EmptySupport";
    case errc::bad_param: return "BadParam";
    case errc::out_of_support: return "OutOfSupport";
    case errc::index_out_of_range: return "IndexOutOfRange";
    case errc::sequence_too_short: return "SequenceTooShort";
    case errc::level_overflow: return "LevelOverflow";
    case errc::zero_marginal: return "ZeroMarginal";
    case errc::budget_exceeded: return "BudgetExceeded";
    case errc::zero_conditioning_event: return "ZeroConditioningEvent";
    case errc::no_conditioning_hits: return "NoConditioningHits";
    case errc::parse_error: return "ParseError";
    case errc::non_positive_value: return "NonPositiveValue";
  }
  return "UnknownError";
}

}  // namespace rkr
