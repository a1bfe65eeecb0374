#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace logchart::cli {

/// Runs one command (arguments without the program name). Writes the JSON
/// report to `out` and a human summary to `err`; returns the exit code:
/// 0 ok, 1 a check found a counterexample, 2 bad input.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace logchart::cli
