#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace entombed::cli {

enum ExitCode : int {
  kSuccess = 0,
  kRuntimeFailure = 1,
  kUsageError = 2,
};

// Runs one invocation. args[0] is the program name. Everything the command
// prints goes to out; diagnostics and usage go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

const char* version() noexcept;

}  // namespace entombed::cli
