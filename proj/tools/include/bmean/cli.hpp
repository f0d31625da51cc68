#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bmean::cli {

enum ExitCode : int {
  kOk = 0,
  kValidationFailure = 1,
  kUsageError = 2,
  kInconclusive = 3,
};

/// Runs one subcommand. `args` excludes the program name. Reports go to
/// `out` (and to files named by --out / --csv-dir); diagnostics go to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bmean::cli
