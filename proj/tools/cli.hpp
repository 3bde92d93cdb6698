#ifndef EXPNORMAL_TOOLS_CLI_HPP
#define EXPNORMAL_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace expnormal::cli {

/// Exit codes: 0 success or all checks passed, 1 verification failure,
/// 2 usage or parameter error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

/// Relative --out paths are resolved under this directory when it is set.
inline constexpr const char* kOutputDirEnv = "EXPNORMAL_OUTPUT_DIR";

/// Runs the tool. `args` excludes the program name. Results go to `out`
/// unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// %.17g with negative zero printed as 0.
std::string format_double(double v);

}  // namespace expnormal::cli

#endif  // EXPNORMAL_TOOLS_CLI_HPP
