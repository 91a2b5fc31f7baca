// Copyright (c) 2026 the edmc authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace edmc::cli {

// Process exit codes. Converged solver runs and successful utility commands
// exit 0; everything else gets a distinct code so scripts can branch on it.
enum ExitCode : int {
  kOk = 0,
  kUsageError = 2,
  kIoError = 3,
  kMaxIterations = 4,
  kRankCollapse = 5,
  kNumericalFailure = 6,
};

/// Parses argv and runs one subcommand. Returns the process exit code.
int run(int argc, const char* const* argv);

}  // namespace edmc::cli
