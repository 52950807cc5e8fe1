#ifndef JACOFRAME_CLI_COMMANDS_HPP
#define JACOFRAME_CLI_COMMANDS_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace jacoframe::cli {

/// Runs the command line (arguments without the program name) and returns
/// the exit code: 0 success, 1 numerical failure, 2 input error.
///
/// Global flags: --error-json prints a machine-readable error object to
/// `out` on failure; --no-timing writes 0 for every wall-time field so that
/// reruns produce byte-identical JSON.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace jacoframe::cli

#endif // JACOFRAME_CLI_COMMANDS_HPP
