#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lelong::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kUsage = 2 };

/// Runs one subcommand. args excludes the program name. Reports go to `out`
/// (or the --output file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace lelong::cli
