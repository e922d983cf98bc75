#ifndef QDISCORD_CLI_HPP
#define QDISCORD_CLI_HPP

#include <iosfwd>
#include <span>
#include <string>

namespace qdiscord {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitValidation = 2, kExitIo = 3 };

/// Runs one command line (args[0] is the program name). Results go to --out
/// when given, otherwise to `out`; diagnostics go to `err`. Output files are
/// written only after the command has fully succeeded.
int parse_and_dispatch(std::span<const std::string> args, std::ostream& out, std::ostream& err);

} // namespace qdiscord

#endif // QDISCORD_CLI_HPP
