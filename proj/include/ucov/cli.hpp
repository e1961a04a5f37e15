#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ucov {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitParse = 2, kExitInternal = 3 };

/// Runs one `ucov` command. `args` excludes the program name. Reports go to
/// `out`, logs and diagnostic summaries to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ucov
