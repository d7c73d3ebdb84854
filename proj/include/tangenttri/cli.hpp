#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tangenttri::cli {

enum ExitCode : int { kExitOk = 0, kExitUsage = 2, kExitNumerical = 3 };

/// Runs one command line. args excludes the program name. Normal output goes
/// to out (or the --out file), diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tangenttri::cli
