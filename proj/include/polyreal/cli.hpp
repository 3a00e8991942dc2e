#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace polyreal::cli {

enum ExitCode : int {
  ok = 0,
  input_error = 1,
  no_stabilization = 2,
  realization_failure = 3,
  verification_failure = 4,
};

/// Runs one command line (without the program name) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polyreal::cli
