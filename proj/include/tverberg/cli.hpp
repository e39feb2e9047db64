#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tverberg {

inline constexpr const char* kToolVersion = "0.1.0";

/// Runs the command line (args exclude the program name) and returns the
/// process exit code: 0 success, 2 input error, 3 guard refusal, 4 solver
/// failure, 1 anything else.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tverberg
