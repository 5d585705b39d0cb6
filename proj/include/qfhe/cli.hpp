#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qfhe::cli {

// Exit codes shared by every subcommand.
enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailed = 1,
  kSemanticError = 2,
  kParseOrIoError = 3,
};

// Runs one command line (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qfhe::cli
