#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace isingff::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitParse = 2,
  kExitDomain = 3,
  kExitResource = 4,
  kExitVerification = 5,
};

// Environment variable holding the default --tolerance.
inline constexpr const char* kToleranceEnv = "ISINGFF_TOLERANCE";

// Parses argv (argv[0] is the program name), runs one subcommand and writes
// the report to out. Diagnostics go to err. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace isingff::cli
