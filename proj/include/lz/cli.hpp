#ifndef LZ_CLI_HPP
#define LZ_CLI_HPP

namespace lz::cli {

/// Entry point of the command-line front end (subcommands: simulate,
/// figures, compare, report).  Exit codes: 0 success / all checks pass,
/// 1 usage error, 2 numerical failure, 3 acceptance failures present.
int run(int argc, const char* const* argv);

}  // namespace lz::cli

#endif
