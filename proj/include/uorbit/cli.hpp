#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace uorbit::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kUsage = 2,
  kDomain = 3,
  kRange = 4,
};

/// Runs the command line `args` (args[0] is the program name). JSON goes to
/// `out` unless --out is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace uorbit::cli
