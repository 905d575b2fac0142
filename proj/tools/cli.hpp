// Copyright 2026 The unli Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>

namespace unli::cli {

enum ExitCode : int {
  kOk = 0,
  kDomainError = 2,  // invalid flags, parameters or input data
  kIoError = 3,
};

/// Runs the command line `argv[0..argc)` writing results to `out` and
/// diagnostics to `err`. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace unli::cli
