#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gtrellis {

/// Exit statuses of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitOther = 1,
  kExitParse = 2,
  kExitInvalidSection = 3,
  kExitNotControllable = 4,
  kExitBadSymbol = 5,
  kExitCheckFailed = 6,
};

/// `args` excludes the program name. Standard input feeds `encode` and `track`.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace gtrellis
