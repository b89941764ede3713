#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rbcsp {

/// Exit statuses of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitFalse = 1,  // check/super answered "false"
  kExitUsage = 2,
  kExitResource = 3,
};

/// Runs one command line (args excludes the program name). Normal output
/// goes to `out` only when the command succeeds or answers false;
/// diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rbcsp
