#pragma once

#include <iosfwd>

namespace tazrp {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitUsage = 2, kExitVerification = 3 };

/// Runs the tool with the given arguments; JSON (or --pretty tables) goes to
/// `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tazrp
