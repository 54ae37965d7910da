#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tristeer::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2, kVerificationFailed = 3, kIo = 4 };

/// Runs one invocation; args excludes the program name. Reports go to `out`
/// (or to --output), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tristeer::cli
