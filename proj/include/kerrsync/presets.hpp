#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kerrsync/sweep.hpp"

namespace kerrsync {

/// Named parameter sets for the figure studies. Sweep presets carry grid
/// axes; trajectory presets carry none. kappa, gamma and n_b come from the
/// shipped calibration defaults, not from the figure definitions.
struct Preset {
  std::string name;
  std::string description;
  ModelParams params;
  std::vector<SweepAxis> axes;

  bool is_sweep() const { return !axes.empty(); }
};

inline constexpr std::size_t kDefaultPresetPoints = 25;
inline constexpr const char* kCalibrationBanner =
    "kappa, gamma and n_b are calibration defaults (kappa=0.15, gamma=0.005, n_b=0), "
    "not values fixed by the figure definitions";

/// Shared base: Delta = (1, 1.005), omega = Delta, g = 0.005, E = 100.
ModelParams figure_base_params();

std::optional<Preset> find_preset(const std::string& name,
                                  std::size_t points = kDefaultPresetPoints);
std::vector<std::string> preset_names();

std::vector<double> linspace(double lo, double hi, std::size_t n);

}  // namespace kerrsync
