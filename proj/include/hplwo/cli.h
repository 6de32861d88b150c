#ifndef HPLWO_CLI_H
#define HPLWO_CLI_H

#include <iosfwd>
#include <string>
#include <vector>

namespace hplwo {

enum ExitCode { kExitOk = 0, kExitFailure = 1, kExitUsage = 2 };

// Runs one command line (args excludes the program name). Normal output goes
// to `out`, diagnostics to `err`. Returns 0 on success, 1 for infeasible
// instances or evaluation errors, 2 for usage, input and I/O errors.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace hplwo

#endif  // HPLWO_CLI_H
