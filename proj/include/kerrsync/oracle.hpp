#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "kerrsync/dynamics.hpp"

namespace kerrsync {

using VectorFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
using DriftFn = std::function<DriftMatrix(const MeanState&, const ModelParams&, double)>;

/// Central differences with one step size for every coordinate.
Eigen::MatrixXd fd_jacobian(const VectorFn& rhs, const Eigen::VectorXd& x, double eps);

/// Central differences with eps_j = rel_eps * max(1, |x_j|).
Eigen::MatrixXd fd_jacobian_scaled(const VectorFn& rhs, const Eigen::VectorXd& x,
                                   double rel_eps = 1e-5);

/// Finite-difference Jacobian of mean_field_rhs at `state`, rescaled from
/// (Re alpha, Im alpha) to the sqrt(2) quadrature frame of the drift matrix.
Mat8 fd_drift_matrix(const MeanState& state, const ModelParams& params, double t);

struct JacobianReport {
  std::size_t states = 0;
  std::size_t failures = 0;       // entries outside tolerance
  double max_excess = 0.0;        // max |M - J| / (rtol |J| + atol)
  double max_abs_error = 0.0;
};

/// Compares `drift` with fd_drift_matrix at `count` seeded random states
/// (optical means in [-50, 50], mechanical in [-5, 5], t in [0, 20]).
/// Tolerance per entry: |M - J| <= rtol |J| + atol.
JacobianReport jacobian_check(const DriftFn& drift, const ModelParams& params,
                              std::size_t count, std::uint64_t seed,
                              double rtol = 1e-6, double atol = 1e-9);

class UnstableDrift : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct McConfig {
  std::size_t trajectories = 100000;
  double dt = 1e-3;
  double horizon = 0.5;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  double overflow_guard = 1e8;

  void validate() const;
};

/// Sample covariance at cfg.horizon of du = A u dt + diag(sqrt(noise)) dW,
/// u(0) = 0, by Euler-Maruyama. Each path draws from its own generator
/// seeded by (cfg.seed, path index), so the estimate does not depend on the
/// worker count. Throws UnstableDrift if a path exceeds the overflow guard.
Eigen::MatrixXd linear_sde_covariance(const Eigen::MatrixXd& drift,
                                      const Eigen::VectorXd& noise_diag,
                                      const McConfig& cfg);

/// Ensemble estimate of V at the horizon with the drift frozen at `frozen`
/// (evaluated at t = 0) and V(0) = 0.
CovarianceState mc_covariance(const ModelParams& params, const MeanState& frozen,
                              const McConfig& cfg);

/// Lyapunov solution at `horizon` for constant M, from V(0) = 0 (RK4).
Mat8 lyapunov_at(const DriftMatrix& M, const NoiseMatrix& N, double horizon,
                 double dt = 1e-3);

/// Operating point used by the ensemble check: coupled, Kerr-active, and
/// with a stable frozen drift matrix.
struct OperatingPoint {
  ModelParams params;
  MeanState mean;
};
OperatingPoint mc_operating_point();

struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct ValidationOptions {
  std::size_t jacobian_states = 100;
  std::size_t mc_paths = 100000;
  unsigned workers = 1;
  std::uint64_t seed = 20190101;
  DriftFn drift;  // empty selects drift_matrix
};

CheckResult check_jacobian(const ValidationOptions& opts);
CheckResult check_monte_carlo(const ValidationOptions& opts);
CheckResult check_vacuum();
CheckResult check_rk4_order();

std::vector<CheckResult> run_validation_suite(const ValidationOptions& opts);

/// Global RK4 error at t = 1 for dy/dt = -y, y(0) = 1.
double rk4_decay_error(double dt);

}  // namespace kerrsync
