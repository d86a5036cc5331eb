#include "kerrsync/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>

#include "kerrsync/parallel.hpp"

namespace kerrsync {

const std::vector<std::string>& sweepable_parameters() {
  static const std::vector<std::string> names = {
      "chi", "mu", "lambda", "eta_C", "Omega_C", "eta_D", "Omega_D", "drive_E", "n_b"};
  return names;
}

void apply_parameter(ModelParams& p, const std::string& name, double v) {
  if (name == "chi") p.chi = {v, v};
  else if (name == "mu") p.mu = v;
  else if (name == "lambda") p.lambda_ = v;
  else if (name == "eta_C") p.eta_C = v;
  else if (name == "Omega_C") p.Omega_C = v;
  else if (name == "eta_D") p.eta_D = v;
  else if (name == "Omega_D") p.Omega_D = v;
  else if (name == "drive_E") p.drive_E = v;
  else if (name == "n_b") p.n_b = v;
  else throw ConfigError("unknown sweep parameter: " + name);
}

SweepAxis SweepAxis::single(std::string name, std::vector<double> points) {
  return {{std::move(name)}, {std::move(points)}};
}

void SweepGrid::validate() const {
  if (axes.empty()) throw ConfigError("no swept parameters");
  for (const auto& axis : axes) {
    if (axis.names.empty() || axis.names.size() != axis.values.size())
      throw ConfigError("malformed sweep axis");
    for (std::size_t k = 0; k < axis.names.size(); ++k) {
      const auto& known = sweepable_parameters();
      if (std::find(known.begin(), known.end(), axis.names[k]) == known.end())
        throw ConfigError("unknown sweep parameter: " + axis.names[k]);
      if (axis.values[k].empty())
        throw ConfigError("empty value list for swept parameter " + axis.names[k]);
      if (axis.values[k].size() != axis.values.front().size())
        throw ConfigError("zipped sweep lists differ in length");
    }
  }
  if (seeds < 1) throw ConfigError("seeds must be >= 1");
  if (!(window_fraction > 0.0 && window_fraction <= 1.0))
    throw ConfigError("window_fraction must lie in (0, 1]");
  integrator.validate();
}

std::vector<std::string> SweepGrid::column_names() const {
  std::vector<std::string> out;
  for (const auto& axis : axes)
    out.insert(out.end(), axis.names.begin(), axis.names.end());
  return out;
}

std::vector<SweepPoint> expand_grid(const SweepGrid& grid) {
  grid.validate();
  std::size_t total = 1;
  for (const auto& axis : grid.axes) total *= axis.size();

  std::vector<SweepPoint> points;
  points.reserve(total);
  std::vector<std::size_t> position(grid.axes.size(), 0);
  for (std::size_t n = 0; n < total; ++n) {
    SweepPoint pt{{}, grid.base};
    for (std::size_t a = 0; a < grid.axes.size(); ++a) {
      const auto& axis = grid.axes[a];
      for (std::size_t k = 0; k < axis.names.size(); ++k) {
        const double v = axis.values[k][position[a]];
        apply_parameter(pt.params, axis.names[k], v);
        pt.values.push_back(v);
      }
    }
    points.push_back(std::move(pt));
    // Odometer increment, last axis fastest.
    for (std::size_t a = grid.axes.size(); a-- > 0;) {
      if (++position[a] < grid.axes[a].size()) break;
      position[a] = 0;
    }
  }
  return points;
}

SteadyStats summarize(const Trajectory& traj, double window_fraction) {
  SteadyStats s;
  s.sq_mean = steady_average(traj.s_q, window_fraction);
  s.sc_mean = steady_average(traj.s_c, window_fraction);
  const auto q1 = traj.component(idx::q(0));
  const auto q2 = traj.component(idx::q(1));
  s.amp_q1 = limit_cycle_amplitude(q1, window_fraction);
  s.amp_q2 = limit_cycle_amplitude(q2, window_fraction);
  s.amp_p1 = limit_cycle_amplitude(traj.component(idx::p(0)), window_fraction);
  s.amp_p2 = limit_cycle_amplitude(traj.component(idx::p(1)), window_fraction);
  s.phase_lag = std::numeric_limits<double>::quiet_NaN();
  if (traj.size() >= 2) {
    try {
      const double dt = traj.t[1] - traj.t[0];
      s.phase_lag = phase_lag(trailing_window(q1, window_fraction),
                              trailing_window(q2, window_fraction), dt);
    } catch (const MeasureError&) {
    }
  }
  return s;
}

CovarianceState initial_covariance(InitialCovariance kind, std::uint64_t seed) {
  return kind == InitialCovariance::kVacuum ? CovarianceState::vacuum()
                                            : CovarianceState::random_psd(seed);
}

namespace {

SweepRow run_point(const SweepGrid& grid, const SweepPoint& pt) {
  SweepRow row;
  row.values = pt.values;
  row.converged = true;
  double sq_min = std::numeric_limits<double>::infinity();
  double sq_max = -sq_min;
  SteadyStats acc{};
  for (std::size_t k = 0; k < grid.seeds; ++k) {
    SteadyStats s{};
    try {
      const auto params = validate_params(pt.params);
      const auto traj = integrate(grid.initial_mean,
                                  initial_covariance(grid.initial_covariance, grid.seed + k),
                                  params, grid.integrator, false);
      if (!traj.status.ok()) {
        row.converged = false;
        row.failure = traj.status.message;
      }
      if (traj.size() == 0) throw MeasureError("no samples");
      s = summarize(traj, grid.window_fraction);
    } catch (const std::exception& e) {
      row.converged = false;
      row.failure = e.what();
      const double nan = std::numeric_limits<double>::quiet_NaN();
      s = {nan, nan, nan, nan, nan, nan, nan};
    }
    acc.sq_mean += s.sq_mean;
    acc.sc_mean += s.sc_mean;
    acc.amp_q1 += s.amp_q1;
    acc.amp_q2 += s.amp_q2;
    acc.amp_p1 += s.amp_p1;
    acc.amp_p2 += s.amp_p2;
    acc.phase_lag += s.phase_lag;
    sq_min = std::min(sq_min, s.sq_mean);
    sq_max = std::max(sq_max, s.sq_mean);
  }
  const double n = static_cast<double>(grid.seeds);
  row.stats = {acc.sq_mean / n, acc.sc_mean / n, acc.amp_q1 / n, acc.amp_q2 / n,
               acc.amp_p1 / n,  acc.amp_p2 / n,  acc.phase_lag / n};
  row.sq_spread = sq_max - sq_min;
  return row;
}

}  // namespace

SweepResult run_sweep(const SweepGrid& grid, unsigned workers) {
  const auto points = expand_grid(grid);
  SweepResult result;
  result.columns = grid.column_names();
  result.seeds = grid.seeds;
  result.rows.resize(points.size());
  parallel_for(points.size(), workers,
               [&](std::size_t i) { result.rows[i] = run_point(grid, points[i]); });
  return result;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_sweep_csv(std::ostream& os, const SweepResult& result) {
  for (const auto& c : result.columns) os << c << ',';
  os << "S_q_mean,S_c_mean,amp_q1,amp_q2,amp_p1,amp_p2,phase_lag,converged";
  if (result.seeds > 1) os << ",S_q_spread";
  os << '\n';
  for (const auto& row : result.rows) {
    for (double v : row.values) os << format_double(v) << ',';
    const auto& s = row.stats;
    for (double v : {s.sq_mean, s.sc_mean, s.amp_q1, s.amp_q2, s.amp_p1, s.amp_p2, s.phase_lag})
      os << format_double(v) << ',';
    os << (row.converged ? 1 : 0);
    if (result.seeds > 1) os << ',' << format_double(row.sq_spread);
    os << '\n';
  }
}

}  // namespace kerrsync
