#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pedigree {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitDomain = 1, kExitAssertion = 2, kExitIo = 3 };

/// Runs the `ped` command line with `args` (program name excluded). Results go
/// to `out` unless --out names a file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pedigree
