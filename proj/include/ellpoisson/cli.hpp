#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ellpoisson
{

// Exit codes of the command-line driver.
enum ExitCode : int { exit_pass = 0, exit_failure = 1, exit_usage = 2 };

// Runs the driver on args (without the program name). Reports go to out (or
// to --out), diagnostics to err.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace ellpoisson
