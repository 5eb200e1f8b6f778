#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gcos::cli {

enum ExitCode : int {
    kSuccess = 0,
    kUsageError = 1,
    kDataError = 2,
    kInternalError = 3,
};

/// Runs the command-line front end. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace gcos::cli
