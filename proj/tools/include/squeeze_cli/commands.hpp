#pragma once

#include <iosfwd>
#include <string>

#include "squeeze_cli/config.hpp"

namespace squeeze::cli {

enum ExitCode : int { kOk = 0, kStatisticalFailure = 1, kConfigError = 2, kNumericalError = 3 };

/// Fewer trajectories than this mark a Monte Carlo comparison as low-power; such a
/// comparison is reported but never fails the run.
inline constexpr std::size_t kLowPowerTrajectories = 1000;
inline constexpr double kZFail = 5.0;

struct Context {
  unsigned threads = 0;
  std::ostream* out = nullptr;  // summary
  std::ostream* err = nullptr;  // warnings and errors
};

int run_correlators(const RunConfig& rc, const Context& ctx);
int run_montecarlo(const RunConfig& rc, const Context& ctx);
int run_variance(const RunConfig& rc, const Context& ctx);

/// Resolves `user` and runs `command`, mapping exceptions to exit codes.
int run_command(const std::string& command, Json user, const Overrides& overrides, const Context& ctx);

}  // namespace squeeze::cli
