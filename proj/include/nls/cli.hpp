#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nls {

/// Exit codes of run_cli.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Command-line front end. Subcommands: run, converge-time, converge-space,
/// oracle-check, dump-initial. Results go to --output or `out`; diagnostics
/// and usage text to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nls
