// Copyright 2026 the rkr authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace rkr {

inline constexpr const char* version_string = "rkr 0.1.0";

}  // namespace rkr
