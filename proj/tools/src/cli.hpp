#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ahlab::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kDisagreement = 2 };

/// Runs one command line (args[0] is the program name). Reports go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ahlab::cli
