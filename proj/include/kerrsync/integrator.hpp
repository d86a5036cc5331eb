#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <boost/numeric/odeint.hpp>
#include <boost/numeric/odeint/external/eigen/eigen.hpp>

#include "kerrsync/dynamics.hpp"

namespace kerrsync {

enum class Method { kRk4, kDormandPrince };

struct IntegratorConfig {
  Method method = Method::kDormandPrince;
  double dt = 1e-3;  // fixed step for kRk4, initial step for kDormandPrince
  double rtol = 1e-8;
  double atol = 1e-10;
  double dt_min = 1e-12;
  double dt_max = 0.0;  // <= 0 selects 0.01 * 2 pi / max(Omega_C, Omega_D, 1)
  double t_end = 2000.0;
  double sample_interval = 0.05;

  void validate() const;
  /// Copy with dt_max filled in from the modulation frequencies.
  IntegratorConfig resolved(const ModelParams& params) const;

  bool operator==(const IntegratorConfig&) const = default;
};

struct IntegrationStatus {
  enum class Code { kOk, kDiverged, kStepUnderflow, kDegenerateCovariance };
  Code code = Code::kOk;
  double time = 0.0;
  std::string message;

  bool ok() const { return code == Code::kOk; }
};

/// Classical fourth-order Runge-Kutta update.
template <class State, class Rhs>
State rk4_step(Rhs&& rhs, const State& y, double t, double dt) {
  const State k1 = rhs(y, t);
  const State k2 = rhs(State(y + (0.5 * dt) * k1), t + 0.5 * dt);
  const State k3 = rhs(State(y + (0.5 * dt) * k2), t + 0.5 * dt);
  const State k4 = rhs(State(y + dt * k3), t + dt);
  return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

/// Sample times 0, h, 2h, ... up to t_end, with t_end appended when it is not
/// on the grid.
std::vector<double> sample_times(double t_end, double sample_interval);

/// Integrates dy/dt = rhs(y, t) from t = 0 to cfg.t_end. `post_step(y)` runs
/// after every accepted step and may project the state; `observe(t, y)` is
/// called at every sample time and returns false to stop early. Stops with
/// kDiverged on the first non-finite state.
template <class State, class Rhs, class PostStep, class Observer>
IntegrationStatus integrate_ode(Rhs&& rhs, State y, const IntegratorConfig& cfg,
                                PostStep&& post_step, Observer&& observe) {
  namespace odeint = boost::numeric::odeint;
  cfg.validate();
  const std::vector<double> samples = sample_times(cfg.t_end, cfg.sample_interval);

  IntegrationStatus status;
  if (!y.allFinite()) {
    status.code = IntegrationStatus::Code::kDiverged;
    status.message = "non-finite initial state";
    return status;
  }

  auto system = [&rhs](const State& x, State& dxdt, double t) { dxdt = rhs(x, t); };
  using Stepper = odeint::runge_kutta_dopri5<State, double, State, double,
                                             odeint::vector_space_algebra>;
  auto controlled = odeint::make_controlled(cfg.atol, cfg.rtol, Stepper());

  double t = 0.0;
  double h = cfg.dt;
  if (!observe(samples.front(), y)) return status;

  for (std::size_t k = 1; k < samples.size(); ++k) {
    const double target = samples[k];
    while (t < target) {
      const double remaining = target - t;
      if (cfg.method == Method::kRk4) {
        // Merge a sliver remainder into the current step.
        const double step = remaining <= cfg.dt * (1.0 + 1e-9) ? remaining : cfg.dt;
        y = rk4_step(rhs, y, t, step);
        t = step == remaining ? target : t + step;
      } else {
        h = std::min({h, cfg.dt_max, remaining});
        const bool lands = h >= remaining;
        double t_try = t;
        if (controlled.try_step(system, y, t_try, h) == odeint::fail) {
          if (h < cfg.dt_min) {
            status.code = IntegrationStatus::Code::kStepUnderflow;
            status.time = t;
            status.message = "step size underflow at t = " + std::to_string(t);
            return status;
          }
          continue;
        }
        t = lands ? target : t_try;
      }
      post_step(y);
      if (!y.allFinite()) {
        status.code = IntegrationStatus::Code::kDiverged;
        status.time = t;
        status.message = "non-finite state at t = " + std::to_string(t);
        return status;
      }
    }
    if (!observe(target, y)) return status;
  }
  return status;
}

/// Time-ordered samples of one model run. `status` records why a run stopped
/// early; the samples collected up to that point are kept.
struct Trajectory {
  std::vector<double> t;
  std::vector<MeanState> mean;
  std::vector<CovarianceState> cov;
  std::vector<double> s_q;
  std::vector<double> s_c;
  IntegrationStatus status;

  std::size_t size() const { return t.size(); }
  /// Column of one mean-state component across all samples.
  std::vector<double> component(int index) const;
};

/// Runs the joint mean + covariance system. With `keep_covariance` false the
/// per-sample covariance matrices are dropped (S_q is still recorded).
Trajectory integrate(const MeanState& initial_mean, const CovarianceState& initial_cov,
                     const ModelParams& params, const IntegratorConfig& cfg,
                     bool keep_covariance = true);

}  // namespace kerrsync
