#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ftdecomp {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitData = 2, kExitInternal = 3 };

/// Entry point of the `ftdecomp` command. `args` excludes the program name.
/// Subcommands: analyze, db {update-weights, insert, submit, review, stats},
/// catalog, metrics, serve.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ftdecomp
