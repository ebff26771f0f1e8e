#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sheafcsp::cli {

enum ExitCode : int { accept = 0, reject = 1, error = 2 };

/// Runs one command line (args excludes the program name). Reports and
/// tables go to `out`, diagnostics and warnings to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sheafcsp::cli
