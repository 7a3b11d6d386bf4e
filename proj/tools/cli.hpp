#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace su6::cli {

/// Exit status contract shared by every command.
enum ExitCode : int {
  kExitOk = 0,
  kExitVerificationFailure = 1,
  kExitUsageError = 2,
};

/// Runs su6lab with args (program name excluded). Human output goes to out,
/// diagnostics to err; files land under --out.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace su6::cli
