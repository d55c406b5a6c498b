#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lexread::cli {

enum ExitCode : int {
    kExitOk = 0,
    /// At least one document could not be fetched or analyzed.
    kExitDocumentFailures = 1,
    /// Bad arguments, unreadable or malformed input files.
    kExitUsage = 2,
};

/// Runs one command. `args` excludes the program name. Primary output goes to
/// `out` unless --out is given; diagnostics always go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lexread::cli
