#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kissing {

enum ExitCode { kExitOk = 0, kExitFail = 1, kExitUsage = 2, kExitInconclusive = 3 };

struct CommandOutcome {
  int exit_code = kExitOk;
  std::vector<std::string> artifacts;  // files written
};

/// Entry point of the kissing3 tool. args excludes the program name.
CommandOutcome run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kissing
