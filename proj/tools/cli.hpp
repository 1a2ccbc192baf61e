#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tsmeta::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kInternalError = 2 };

/// Runs one `tsmeta` invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tsmeta::cli
