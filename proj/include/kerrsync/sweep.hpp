#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "kerrsync/integrator.hpp"
#include "kerrsync/measures.hpp"

namespace kerrsync {

/// Parameters a sweep may vary. "chi" sets both cavities.
const std::vector<std::string>& sweepable_parameters();
void apply_parameter(ModelParams& params, const std::string& name, double value);

/// One grid axis. An axis with several names moves them together (zipped),
/// e.g. the (mu, lambda) coupling settings of one family of curves.
struct SweepAxis {
  std::vector<std::string> names;
  std::vector<std::vector<double>> values;  // values[name][point]

  static SweepAxis single(std::string name, std::vector<double> points);
  std::size_t size() const { return values.empty() ? 0 : values.front().size(); }
};

enum class InitialCovariance { kRandom, kVacuum };

struct SweepGrid {
  ModelParams base;
  IntegratorConfig integrator;
  std::vector<SweepAxis> axes;
  MeanState initial_mean;
  InitialCovariance initial_covariance = InitialCovariance::kRandom;
  std::uint64_t seed = 1;
  std::size_t seeds = 1;  // > 1 averages SteadyStats over seeds seed, seed+1, ...
  double window_fraction = 0.4;

  /// Throws ConfigError("no swept parameters") for an axis-free grid.
  void validate() const;
  std::vector<std::string> column_names() const;
};

struct SweepPoint {
  std::vector<double> values;  // one per column
  ModelParams params;
};

/// Cartesian product of the axes; the first axis varies slowest.
std::vector<SweepPoint> expand_grid(const SweepGrid& grid);

SteadyStats summarize(const Trajectory& traj, double window_fraction);

CovarianceState initial_covariance(InitialCovariance kind, std::uint64_t seed);

struct SweepRow {
  std::vector<double> values;
  SteadyStats stats;
  bool converged = false;
  double sq_spread = 0.0;  // max - min of S_q over seeds
  std::string failure;
};

struct SweepResult {
  std::vector<std::string> columns;
  std::vector<SweepRow> rows;
  std::size_t seeds = 1;
};

/// Runs every grid point independently; the result does not depend on
/// `workers`. Per-point failures land in the row's converged flag.
SweepResult run_sweep(const SweepGrid& grid, unsigned workers);

/// Header: swept names, then
/// S_q_mean,S_c_mean,amp_q1,amp_q2,amp_p1,amp_p2,phase_lag,converged
/// (plus S_q_spread when several seeds were averaged).
void write_sweep_csv(std::ostream& os, const SweepResult& result);

std::string format_double(double v);

}  // namespace kerrsync
