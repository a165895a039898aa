#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace oneshot::cli {

enum ExitCode : int {
  kOk = 0,
  kValidation = 2,
  kBudget = 3,
  kCertificate = 4,
};

// Runs one command line (args excludes the program name). Reports go to out
// (or to --out), diagnostics to err. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace oneshot::cli
