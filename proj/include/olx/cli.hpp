#pragma once

#include <ostream>

namespace olx::cli {

/// Exit codes of `olx`.
enum ExitCode : int { kOk = 0, kUsage = 1, kNumeric = 2, kResource = 3 };

/// Runs one `olx` subcommand. Results go to `out` (or the --out file),
/// a single-line diagnostic to `err` on failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace olx::cli
