// Copyright 2026 The unli Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

namespace unli {

/// Text rendering of numbers in CSV and console output.
enum class NumberFormat {
  significant10,  // %.10g
  fixed3,         // three decimals, for table reproduction
};

std::string format_number(double value, NumberFormat format = NumberFormat::significant10);

}  // namespace unli
