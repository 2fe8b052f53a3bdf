#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dpcost {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitDataError = 1, kExitUsage = 2 };

/// Runs the `dpcost` command line. `args` excludes the program name.
/// Subcommands: validate, summarize, cost, boundaries, simulate, plot, synth.
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dpcost
