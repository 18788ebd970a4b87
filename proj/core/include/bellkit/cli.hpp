#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bellkit::cli {

/// Dispatches one command line (without the program name). Writes the
/// run report to `out`. Exit codes: 0 success, 1 usage, 2 validation
/// error, 3 solver non-convergence, 4 capacity error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bellkit::cli
