#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nosol::cli {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int {
  kClean = 0,
  kWitness = 1,
  kBudget = 2,
  kBestEffort = 3,
  kUsage = 64,
  kPrecondition = 65,
  kInternal = 70,
};

/// Runs one command line (without the program name). All output goes to the
/// given streams, so tests can drive the tool in-process.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nosol::cli
