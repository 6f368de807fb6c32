#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace abduce {

/// Exit codes of the command line tool.
enum ExitCode : int { exit_ok = 0, exit_limit = 1, exit_input = 2 };

/// Runs the command line tool on `args` (without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace abduce
