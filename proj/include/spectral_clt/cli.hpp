#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace spectral_clt::cli {

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int { kSuccess = 0, kInternalError = 1, kUsageError = 2 };

/// Runs the command line `args` (without the program name). Documents go to
/// `out` when the output path is "-", diagnostics and summaries to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spectral_clt::cli
