#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dfree::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kUsage = 2, kCapacity = 3 };

/// Environment variable naming the directory that relative --output paths
/// are resolved against.
inline constexpr const char* kOutputDirEnv = "DFREE_OUTPUT_DIR";

/// Runs the command line `args` (without the program name). Data goes to
/// `out` or the --output file, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dfree::cli
