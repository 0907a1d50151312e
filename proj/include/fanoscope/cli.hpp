#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fanoscope {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitInputError = 2,
  kExitPartialIngestion = 3,
  kExitNegative = 10,
};

/// Runs the tool on `args` (without the program name), writing to the given streams.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fanoscope
