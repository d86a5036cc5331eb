#include "kerrsync/oracle.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "kerrsync/integrator.hpp"
#include "kerrsync/measures.hpp"
#include "kerrsync/parallel.hpp"

namespace kerrsync {

namespace {

constexpr std::size_t kPathBlock = 1024;

// SplitMix64 finalizer; decorrelates (seed, index) pairs before they seed a
// per-path generator.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

template <class StepFor>
Eigen::MatrixXd central_differences(const VectorFn& rhs, const Eigen::VectorXd& x,
                                    StepFor&& step_for) {
  const Eigen::Index n = x.size();
  Eigen::MatrixXd J(rhs(x).size(), n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double eps = step_for(x[j]);
    Eigen::VectorXd up = x, down = x;
    up[j] += eps;
    down[j] -= eps;
    J.col(j) = (rhs(up) - rhs(down)) / (2.0 * eps);
  }
  return J;
}

Vec8 quadrature_scale() {
  Vec8 s = Vec8::Ones();
  for (int j = 0; j < 2; ++j) {
    s[idx::re(j)] = std::sqrt(2.0);
    s[idx::im(j)] = std::sqrt(2.0);
  }
  return s;
}

}  // namespace

Eigen::MatrixXd fd_jacobian(const VectorFn& rhs, const Eigen::VectorXd& x, double eps) {
  return central_differences(rhs, x, [eps](double) { return eps; });
}

Eigen::MatrixXd fd_jacobian_scaled(const VectorFn& rhs, const Eigen::VectorXd& x,
                                   double rel_eps) {
  return central_differences(
      rhs, x, [rel_eps](double v) { return rel_eps * std::max(1.0, std::abs(v)); });
}

Mat8 fd_drift_matrix(const MeanState& state, const ModelParams& params, double t) {
  auto rhs = [&params, t](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    MeanState s;
    s.values = x;
    return mean_field_rhs(s, params, t);
  };
  const Mat8 J = fd_jacobian_scaled(rhs, state.values);
  // Quadrature frame u = S z: M = S J S^-1.
  const Vec8 s = quadrature_scale();
  return s.asDiagonal() * J * s.cwiseInverse().asDiagonal();
}

JacobianReport jacobian_check(const DriftFn& drift, const ModelParams& params,
                              std::size_t count, std::uint64_t seed, double rtol,
                              double atol) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> optical(-50.0, 50.0);
  std::uniform_real_distribution<double> mechanical(-5.0, 5.0);
  std::uniform_real_distribution<double> time(0.0, 20.0);

  JacobianReport report;
  for (std::size_t k = 0; k < count; ++k) {
    MeanState s;
    for (int j = 0; j < 2; ++j) {
      s.values[idx::q(j)] = mechanical(rng);
      s.values[idx::p(j)] = mechanical(rng);
      s.values[idx::re(j)] = optical(rng);
      s.values[idx::im(j)] = optical(rng);
    }
    const double t = time(rng);
    const Mat8 reference = fd_drift_matrix(s, params, t);
    const Mat8 M = drift(s, params, t);
    for (int i = 0; i < 8; ++i) {
      for (int j = 0; j < 8; ++j) {
        const double err = std::abs(M(i, j) - reference(i, j));
        const double excess = err / (rtol * std::abs(reference(i, j)) + atol);
        report.max_abs_error = std::max(report.max_abs_error, err);
        report.max_excess = std::max(report.max_excess, excess);
        if (excess > 1.0) ++report.failures;
      }
    }
    ++report.states;
  }
  return report;
}

void McConfig::validate() const {
  if (trajectories < 2) throw ConfigError("trajectory count must be >= 2");
  if (!(dt > 0.0)) throw ConfigError("step size must be positive");
  if (!(horizon > 0.0)) throw ConfigError("horizon must be positive");
}

Eigen::MatrixXd linear_sde_covariance(const Eigen::MatrixXd& drift,
                                      const Eigen::VectorXd& noise_diag,
                                      const McConfig& cfg) {
  cfg.validate();
  const Eigen::Index n = drift.rows();
  const auto steps = static_cast<std::size_t>(std::llround(cfg.horizon / cfg.dt));
  const double dt = cfg.horizon / static_cast<double>(steps);

  std::vector<Eigen::Index> noisy;
  Eigen::VectorXd amplitude(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    amplitude[i] = std::sqrt(std::max(0.0, noise_diag[i]) * dt);
    if (amplitude[i] > 0.0) noisy.push_back(i);
  }
  const Eigen::MatrixXd step_map = Eigen::MatrixXd::Identity(n, n) + dt * drift;

  struct Block {
    Eigen::VectorXd sum;
    Eigen::MatrixXd outer;
  };
  const std::size_t blocks = (cfg.trajectories + kPathBlock - 1) / kPathBlock;
  std::vector<Block> partial(blocks);

  parallel_for(blocks, cfg.workers, [&](std::size_t b) {
    Block acc{Eigen::VectorXd::Zero(n), Eigen::MatrixXd::Zero(n, n)};
    const std::size_t first = b * kPathBlock;
    const std::size_t last = std::min(cfg.trajectories, first + kPathBlock);
    Eigen::VectorXd u(n), next(n);
    for (std::size_t path = first; path < last; ++path) {
      std::mt19937_64 rng(mix_seed(cfg.seed, path));
      std::normal_distribution<double> normal(0.0, 1.0);
      u.setZero();
      for (std::size_t k = 0; k < steps; ++k) {
        next.noalias() = step_map * u;
        for (Eigen::Index i : noisy) next[i] += amplitude[i] * normal(rng);
        u.swap(next);
      }
      if (!(u.cwiseAbs().maxCoeff() <= cfg.overflow_guard))
        throw UnstableDrift("ensemble path exceeded overflow guard; drift is unstable");
      acc.sum += u;
      acc.outer.noalias() += u * u.transpose();
    }
    partial[b] = std::move(acc);
  });

  Eigen::VectorXd sum = Eigen::VectorXd::Zero(n);
  Eigen::MatrixXd outer = Eigen::MatrixXd::Zero(n, n);
  for (const auto& blk : partial) {
    sum += blk.sum;
    outer += blk.outer;
  }
  const double count = static_cast<double>(cfg.trajectories);
  const Eigen::VectorXd mean = sum / count;
  Eigen::MatrixXd cov = (outer - count * mean * mean.transpose()) / (count - 1.0);
  return 0.5 * (cov + cov.transpose());
}

CovarianceState mc_covariance(const ModelParams& params, const MeanState& frozen,
                              const McConfig& cfg) {
  const DriftMatrix M = drift_matrix(frozen, params, 0.0);
  const NoiseMatrix N = noise_matrix(params);
  CovarianceState out;
  out.V = linear_sde_covariance(M, N.diagonal, cfg);
  return out;
}

Mat8 lyapunov_at(const DriftMatrix& M, const NoiseMatrix& N, double horizon, double dt) {
  const auto steps = static_cast<std::size_t>(std::ceil(horizon / dt - 1e-9));
  const double h = horizon / static_cast<double>(steps);
  auto rhs = [&](const Mat8& V, double) -> Mat8 { return lyapunov_rhs(V, M, N); };
  Mat8 V = Mat8::Zero();
  for (std::size_t k = 0; k < steps; ++k)
    V = rk4_step(rhs, V, static_cast<double>(k) * h, h);
  return V;
}

OperatingPoint mc_operating_point() {
  OperatingPoint op;
  op.params.chi = {4.5e-4, 4.5e-4};
  op.params.mu = 0.03;
  op.params.lambda_ = 0.03;
  op.params.n_b = 5.0;
  op.params.gamma = 0.05;
  op.mean.values << 1.0, 0.0, 3.0, 1.0, 1.2, 0.1, 2.5, -0.5;
  return op;
}

double rk4_decay_error(double dt) {
  using Scalar1 = Eigen::Matrix<double, 1, 1>;
  auto rhs = [](const Scalar1& y, double) -> Scalar1 { return -y; };
  const auto steps = static_cast<std::size_t>(std::llround(1.0 / dt));
  Scalar1 y = Scalar1::Constant(1.0);
  for (std::size_t k = 0; k < steps; ++k) y = rk4_step(rhs, y, static_cast<double>(k) * dt, dt);
  return std::abs(y[0] - std::exp(-1.0));
}

CheckResult check_jacobian(const ValidationOptions& opts) {
  ModelParams params;
  params.chi = {6e-4, 4.5e-4};
  params.mu = 0.03;
  params.lambda_ = 0.02;
  params.eta_C = 1.0;
  params.Omega_C = 1.0;
  params.eta_D = 0.5;
  params.Omega_D = 1.3;
  const DriftFn drift = opts.drift ? opts.drift : DriftFn(drift_matrix);
  const auto report = jacobian_check(drift, params, opts.jacobian_states, opts.seed);

  CheckResult r;
  r.name = "jacobian";
  r.measured = report.max_excess;
  r.threshold = 1.0;
  r.passed = report.failures == 0;
  std::ostringstream os;
  os << report.states << " states, " << report.failures
     << " entries outside rtol 1e-6 / atol 1e-9, max abs error " << report.max_abs_error;
  r.detail = os.str();
  return r;
}

CheckResult check_monte_carlo(const ValidationOptions& opts) {
  const auto op = mc_operating_point();
  McConfig cfg;
  cfg.trajectories = opts.mc_paths;
  cfg.workers = opts.workers;
  cfg.seed = opts.seed;
  const Mat8 estimate = mc_covariance(op.params, op.mean, cfg).V;
  const Mat8 reference = lyapunov_at(drift_matrix(op.mean, op.params, 0.0),
                                     noise_matrix(op.params), cfg.horizon);

  CheckResult r;
  r.name = "monte_carlo_covariance";
  r.threshold = 1.0;
  double worst = 0.0;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      const double tol = std::max(0.05 * std::abs(reference(i, j)), 1e-3);
      worst = std::max(worst, std::abs(estimate(i, j) - reference(i, j)) / tol);
    }
  r.measured = worst;
  r.passed = worst <= 1.0;
  std::ostringstream os;
  os << opts.mc_paths << " paths, horizon " << cfg.horizon << ", dt " << cfg.dt
     << "; measured = max |V_mc - V_lyap| / max(0.05 |V_lyap|, 1e-3)";
  r.detail = os.str();
  return r;
}

CheckResult check_vacuum() {
  CheckResult r;
  r.name = "vacuum_sq";
  r.measured = sync_q_instant(CovarianceState::vacuum().V);
  r.threshold = 1.0;
  r.passed = r.measured == 1.0;
  r.detail = "S_q of the vacuum covariance I/2";
  return r;
}

CheckResult check_rk4_order() {
  CheckResult r;
  r.name = "rk4_order";
  const double coarse = rk4_decay_error(0.02);
  const double fine = rk4_decay_error(0.01);
  r.measured = coarse / fine;
  r.threshold = 16.0;
  r.passed = r.measured >= 12.0 && r.measured <= 20.0;
  r.detail = "error ratio under dt halving on dy/dt = -y, accepted in [12, 20]";
  return r;
}

std::vector<CheckResult> run_validation_suite(const ValidationOptions& opts) {
  return {check_jacobian(opts), check_monte_carlo(opts), check_vacuum(), check_rk4_order()};
}

}  // namespace kerrsync
