#include <cmath>
#include <random>

#include "doctest.h"
#include "kerrsync/oracle.hpp"

using namespace kerrsync;

TEST_CASE("fd_jacobian recovers a linear map") {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  Eigen::MatrixXd A(5, 5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) A(i, j) = g(rng);
  Eigen::VectorXd x(5);
  for (int i = 0; i < 5; ++i) x[i] = g(rng);
  VectorFn linear = [&A](const Eigen::VectorXd& v) -> Eigen::VectorXd { return A * v; };
  for (double eps : {1e-8, 1e-6, 1e-4, 1e-2}) {
    const auto J = fd_jacobian(linear, x, eps);
    CHECK((J - A).cwiseAbs().maxCoeff() < 1e-7);
  }
  CHECK((fd_jacobian_scaled(linear, x) - A).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("fd_jacobian of a square") {
  VectorFn square = [](const Eigen::VectorXd& v) -> Eigen::VectorXd {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(v.size());
    out[0] = v[0] * v[0];
    return out;
  };
  Eigen::VectorXd x = Eigen::VectorXd::Zero(3);
  x[0] = 3.0;
  const auto J = fd_jacobian(square, x, 1e-4);
  CHECK(std::abs(J(0, 0) - 6.0) < 1e-6);
  CHECK(J.col(1).isZero(0.0));
}

TEST_CASE("jacobian_check passes for drift_matrix and catches a sign flip") {
  ModelParams p;
  p.chi = {5e-4, 2e-4};
  p.mu = 0.02;
  p.lambda_ = 0.01;
  p.eta_C = 0.8;
  p.Omega_C = 1.1;
  const auto good = jacobian_check(DriftFn(drift_matrix), p, 30, 99);
  CHECK(good.states == 30);
  CHECK(good.failures == 0);
  CHECK(good.max_excess <= 1.0);

  DriftFn flipped = [](const MeanState& s, const ModelParams& q, double t) {
    DriftMatrix M = drift_matrix(s, q, t);
    M(idx::p(0), idx::re(0)) *= -1.0;
    return M;
  };
  const auto bad = jacobian_check(flipped, p, 30, 99);
  CHECK(bad.failures > 0);
}

TEST_CASE("Ornstein-Uhlenbeck variance from the ensemble") {
  Eigen::MatrixXd A(1, 1);
  A(0, 0) = -0.15;
  Eigen::VectorXd N(1);
  N[0] = 0.3;
  McConfig cfg;
  cfg.trajectories = 100000;
  cfg.dt = 0.02;
  cfg.horizon = 40.0;
  cfg.seed = 17;
  const double var = linear_sde_covariance(A, N, cfg)(0, 0);
  const double se = 1.0 * std::sqrt(2.0 / static_cast<double>(cfg.trajectories));
  CHECK(std::abs(var - 1.0) <= 3.0 * se);
}

TEST_CASE("no noise gives zero covariance") {
  const auto op = mc_operating_point();
  ModelParams p = op.params;
  McConfig cfg;
  cfg.trajectories = 64;
  Eigen::MatrixXd M = drift_matrix(op.mean, p, 0.0);
  const auto cov = linear_sde_covariance(M, Eigen::VectorXd::Zero(8), cfg);
  CHECK(cov.isZero(0.0));
}

TEST_CASE("ensemble estimate is symmetric PSD and worker-count independent") {
  const auto op = mc_operating_point();
  McConfig cfg;
  cfg.trajectories = 3000;
  cfg.seed = 5;
  const auto one = mc_covariance(op.params, op.mean, cfg);
  cfg.workers = 4;
  const auto four = mc_covariance(op.params, op.mean, cfg);
  CHECK(one.V == four.V);
  CHECK(one.max_asymmetry() == 0.0);
  Eigen::SelfAdjointEigenSolver<Mat8> eig(one.V);
  CHECK(eig.eigenvalues().minCoeff() > -1e-12);
}

TEST_CASE("operating point drift is stable") {
  const auto op = mc_operating_point();
  const Mat8 M = drift_matrix(op.mean, op.params, 0.0);
  Eigen::EigenSolver<Mat8> eig(M);
  CHECK(eig.eigenvalues().real().maxCoeff() < 0.0);
}

TEST_CASE("unstable drift trips the overflow guard") {
  Eigen::MatrixXd A(1, 1);
  A(0, 0) = 50.0;
  Eigen::VectorXd N(1);
  N[0] = 1.0;
  McConfig cfg;
  cfg.trajectories = 4;
  cfg.horizon = 1.0;
  cfg.overflow_guard = 1e6;
  CHECK_THROWS_AS(linear_sde_covariance(A, N, cfg), UnstableDrift);
}

TEST_CASE("Monte Carlo error shrinks like one over root n") {
  const auto op = mc_operating_point();
  const Mat8 reference = lyapunov_at(drift_matrix(op.mean, op.params, 0.0),
                                     noise_matrix(op.params), 0.5);
  auto mean_deviation = [&](std::size_t paths) {
    double total = 0.0;
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      McConfig cfg;
      cfg.trajectories = paths;
      cfg.seed = seed * 1000 + paths;
      total += (mc_covariance(op.params, op.mean, cfg).V - reference).norm();
    }
    return total / 4.0;
  };
  const double ratio = mean_deviation(1000) / mean_deviation(4000);
  CHECK(ratio >= 1.0);
  CHECK(ratio <= 4.0);
}

TEST_CASE("lyapunov_at matches the closed form for a scalar-like drift") {
  ModelParams p;
  const auto N = noise_matrix(p);
  const double k = 0.4;
  const Mat8 V = lyapunov_at(-k * Mat8::Identity(), N, 3.0);
  const Mat8 exact = N.dense() * (1.0 - std::exp(-2.0 * k * 3.0)) / (2.0 * k);
  CHECK((V - exact).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("validation suite pieces") {
  CHECK(check_vacuum().passed);
  CHECK(check_vacuum().measured == 1.0);
  const auto order = check_rk4_order();
  CHECK(order.passed);
  CHECK(order.measured == doctest::Approx(16.0).epsilon(0.1));

  ValidationOptions opts;
  opts.jacobian_states = 20;
  CHECK(check_jacobian(opts).passed);
  opts.drift = [](const MeanState& s, const ModelParams& q, double t) {
    DriftMatrix M = drift_matrix(s, q, t);
    M(idx::re(1), idx::im(1)) = -M(idx::re(1), idx::im(1));
    return M;
  };
  CHECK_FALSE(check_jacobian(opts).passed);
}
