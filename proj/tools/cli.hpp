#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace martinet::cli {

/// Runs one invocation. `args` excludes the program name.
/// Returns 0 on success, 2 on a usage or validation error, 1 when a computation fails.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace martinet::cli
