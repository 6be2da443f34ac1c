#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tambara {

/// Exit codes of the command line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitInput = 1,
  kExitAxiom = 2,
  kExitUnsupported = 3,
  kExitPresentation = 4,
  kExitTimeout = 5,
};

/// Runs one command; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tambara
