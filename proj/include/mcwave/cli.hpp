#pragma once

// The `mcwave` command line, callable in-process for testing.

#include <iosfwd>
#include <string>
#include <vector>

namespace mcw {

enum ExitCode : int {
    kExitOk = 0,
    kExitCheckFailed = 1,
    kExitUsage = 2,  ///< bad arguments or invalid configuration
    kExitIo = 3,
};

/// `args` excludes the program name. CSV output goes to the file named by -o,
/// or to `out` when -o is absent; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mcw
