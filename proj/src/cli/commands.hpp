#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vaxeff::cli {

enum ExitCode : int { kOk = 0, kDomain = 2, kDegenerate = 3 };

/// Dispatches `vaxeff <subcommand> ...`. Machine output goes to `out`,
/// diagnostics to `err`. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vaxeff::cli
