#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sketchlevel {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitIo = 1,        ///< I/O, decode or parse failure
  kExitBudget = 2,    ///< generated level over max_blocks
  kExitUnstable = 3,  ///< validate found unsupported blocks
  kExitUsage = 64,
};

/// Runs the CLI. args[0] is the program name. Machine-readable JSON goes to
/// `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sketchlevel
