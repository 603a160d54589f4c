#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ectop::cli {

/// Runs one command line (without the program name). Returns the process
/// exit code: 0 ok, 2 input or usage error, 3 numeric failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ectop::cli
