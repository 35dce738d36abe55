#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace embroidery::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitSolverFailure = 2;

/// Entry point of the `embroidery` tool. Subcommands: predict, transition,
/// fit, fit-tube, markers, sweep. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience for tests: args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace embroidery::cli
