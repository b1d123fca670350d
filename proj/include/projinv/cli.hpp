#pragma once

// Command line frontend. The projinv executable is a thin wrapper around
// run_cli so the tests can drive it in-process.

#include <iosfwd>
#include <string>
#include <vector>

namespace projinv {

inline constexpr int kExitOk = 0;
/// An identity check failed.
inline constexpr int kExitFailure = 1;
/// Bad flags, unparsable curve, projection or JSON.
inline constexpr int kExitUsage = 2;
/// Curve dimension or group does not fit the command.
inline constexpr int kExitMismatch = 3;
/// Any other evaluation error (for example too few regular samples).
inline constexpr int kExitError = 4;

/// Subcommands: invariants, project, verify, signature, transform, classify,
/// curves. Results go to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
/// Same, with args[0] as the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// PROJINV_JET_ORDER if set, else 10. Throws InvalidArgument on a malformed
/// value or one outside [4, 40].
int jet_order_from_env();

}  // namespace projinv
