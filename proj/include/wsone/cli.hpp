// cli.hpp -- the wsone command line: decide, gen and bench.

#ifndef WSONE_CLI_HPP
#define WSONE_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace wsone {

enum ExitCode { kExitDecided = 0, kExitInputError = 1, kExitBudget = 2 };

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace wsone

#endif
