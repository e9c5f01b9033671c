#ifndef MIXEDLINK_CLI_HPP
#define MIXEDLINK_CLI_HPP

#include <ostream>

namespace mixedlink {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitUsage = 2 };

/// mixedlink <weights|certify|trace|torus-map|eta0> --config PATH
///           [--out PATH] [--seed N] [--jobs N]
/// Reports go to --out (or the config's `out`), else to `out`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mixedlink

#endif  // MIXEDLINK_CLI_HPP
