#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace radialmp::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kValidation = 2,
  kNotConverged = 3,
  kUsage = 64,
};

/// Runs one subcommand. args excludes the program name, e.g.
/// {"exponents", "--config", "problem.json"}.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string usage();

}  // namespace radialmp::cli
