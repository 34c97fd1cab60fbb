#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace znr::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 1,
    exit_data = 2,
    exit_precondition = 3,
};

/// Parses `args` (without the program name), runs the command, and writes the
/// report to `out`. Diagnostics go to `err` as a single line.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace znr::cli
