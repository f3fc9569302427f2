#pragma once

#include <iosfwd>

namespace vopt {

/// Process exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitData = 2, kExitConvergence = 3 };

/// Entry point of the `vopt` tool; subcommands pareto, gaps, simulate,
/// budget and beta. Returns an ExitCode.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vopt
