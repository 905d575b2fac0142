// Copyright 2026 The unli Authors.
// SPDX-License-Identifier: Apache-2.0

#include "unli/format.hpp"

#include <cstdio>

namespace unli {

std::string format_number(double value, NumberFormat format) {
  char buf[64];
  const char* spec = format == NumberFormat::fixed3 ? "%.3f" : "%.10g";
  std::snprintf(buf, sizeof buf, spec, value);
  std::string out(buf);
  if (out == "-0.000" || out == "-0") out.erase(0, 1);
  return out;
}

}  // namespace unli
