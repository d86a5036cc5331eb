#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "json.hpp"
#include "kerrsync/presets.hpp"
#include "kerrsync/sweep.hpp"

namespace kerrsync {

inline constexpr const char* kVersion = "0.1.0";

/// Overwrites the fields present in `j`. Keys are the ModelParams field names
/// ("lambda" for lambda_); pair fields accept a number (both cavities) or a
/// two-element array. Unknown keys throw ConfigError.
void apply_params_json(ModelParams& params, const nlohmann::ordered_json& j);
ModelParams params_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json params_to_json(const ModelParams& params);

void apply_integrator_json(IntegratorConfig& cfg, const nlohmann::ordered_json& j);
nlohmann::ordered_json integrator_to_json(const IntegratorConfig& cfg);

nlohmann::ordered_json axes_to_json(const std::vector<SweepAxis>& axes);

/// Everything one CLI run needs, after merging preset, config file and the
/// KERRSYNC_SEED override.
struct RunConfig {
  std::string preset;
  ModelParams params;
  IntegratorConfig integrator;
  std::uint64_t seed = 1;
  InitialCovariance initial_covariance = InitialCovariance::kRandom;
  MeanState initial_mean;
  double window_fraction = 0.4;
  std::vector<SweepAxis> axes;
  std::size_t seeds = 1;
  std::size_t preset_points = kDefaultPresetPoints;

  nlohmann::ordered_json to_json() const;
  SweepGrid sweep_grid() const;
};

/// Either argument may be absent, not both. `seed_override` is the raw
/// KERRSYNC_SEED value, if set.
RunConfig resolve_run_config(const std::optional<std::string>& config_path,
                             const std::optional<std::string>& preset,
                             const std::optional<std::string>& seed_override);
RunConfig run_config_from_json(const nlohmann::ordered_json& doc,
                               const std::optional<std::string>& preset,
                               const std::optional<std::string>& seed_override);

/// 64-bit FNV-1a of the canonical JSON dump, as 16 hex digits.
std::string config_hash(const nlohmann::ordered_json& j);

/// Columns t,q1,p1,re_a1,im_a1,q2,p2,re_a2,im_a2,S_q,S_c with 17 significant
/// digits.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

/// SteadyStats as JSON; NaN becomes null.
nlohmann::ordered_json stats_to_json(const SteadyStats& s);

}  // namespace kerrsync
