#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "kerrsync/oracle.hpp"

namespace kerrsync::cli {

// Exit codes.
inline constexpr int kSuccess = 0;
inline constexpr int kConfigError = 1;
inline constexpr int kNumericalFailure = 2;

struct RunOptions {
  std::optional<std::string> config_path;
  std::optional<std::string> preset;
  std::string out_dir = ".";
  unsigned workers = 1;
  std::optional<std::string> seed_override;  // KERRSYNC_SEED
};

/// Writes trajectory.csv and summary.json into out_dir.
int cmd_simulate(const RunOptions& opts, std::ostream& log);

/// Writes sweep.csv and sweep_meta.json into out_dir.
int cmd_sweep(const RunOptions& opts, std::ostream& log);

/// Writes validation.json; nonzero exit if any check fails.
int cmd_validate(const ValidationOptions& checks, const std::string& out_dir, std::ostream& log);

/// Full command-line entry point.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace kerrsync::cli
