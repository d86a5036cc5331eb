#include <cmath>

#include "doctest.h"
#include "kerrsync/integrator.hpp"
#include "kerrsync/oracle.hpp"
#include "kerrsync/presets.hpp"

using namespace kerrsync;

namespace {
using Scalar1 = Eigen::Matrix<double, 1, 1>;

auto decay = [](const Scalar1& y, double) -> Scalar1 { return -y; };
auto no_post = [](auto&) {};
}  // namespace

TEST_CASE("rk4_step") {
  auto zero = [](const Scalar1&, double) -> Scalar1 { return Scalar1::Zero(); };
  CHECK(rk4_step(zero, Scalar1(Scalar1::Constant(3.5)), 0.0, 0.7)[0] == 3.5);

  auto ramp = [](const Scalar1&, double t) -> Scalar1 { return Scalar1::Constant(t); };
  CHECK(rk4_step(ramp, Scalar1(Scalar1::Zero()), 0.0, 1.0)[0] == 0.5);

  // 1 - h + h^2/2 - h^3/6 + h^4/24 at h = 0.1.
  const double taylor = 1.0 - 0.1 + 0.005 - 0.1 * 0.1 * 0.1 / 6.0 + 1e-4 / 24.0;
  const double y = rk4_step(decay, Scalar1(Scalar1::Constant(1.0)), 0.0, 0.1)[0];
  CHECK(y == doctest::Approx(taylor).epsilon(1e-15));
  CHECK(y == doctest::Approx(0.9048375).epsilon(1e-7));
}

TEST_CASE("fixed-step RK4 on exponential decay") {
  IntegratorConfig cfg;
  cfg.method = Method::kRk4;
  cfg.dt = 0.01;
  cfg.t_end = 1.0;
  cfg.sample_interval = 0.25;
  std::vector<double> ts, ys;
  const auto status = integrate_ode(decay, Scalar1(Scalar1::Constant(1.0)), cfg, no_post,
                                    [&](double t, const Scalar1& y) {
                                      ts.push_back(t);
                                      ys.push_back(y[0]);
                                      return true;
                                    });
  CHECK(status.ok());
  REQUIRE(ts.size() == 5);
  CHECK(ts.back() == 1.0);
  CHECK(std::abs(ys.back() - std::exp(-1.0)) < 1e-8);
}

TEST_CASE("RK4 global error is fourth order") {
  const double ratio = rk4_decay_error(0.02) / rk4_decay_error(0.01);
  CHECK(ratio >= 12.0);
  CHECK(ratio <= 20.0);
}

TEST_CASE("adaptive Dormand-Prince on exponential decay") {
  IntegratorConfig cfg;
  cfg.t_end = 5.0;
  cfg.dt_max = 0.5;
  cfg.sample_interval = 1.0;
  double last = 0.0;
  integrate_ode(decay, Scalar1(Scalar1::Constant(1.0)), cfg, no_post, [&](double, const Scalar1& y) {
    last = y[0];
    return true;
  });
  CHECK(last == doctest::Approx(std::exp(-5.0)).epsilon(1e-7));
}

TEST_CASE("zero right-hand side keeps every sample at the initial state") {
  auto zero = [](const Scalar1&, double) -> Scalar1 { return Scalar1::Zero(); };
  for (Method m : {Method::kRk4, Method::kDormandPrince}) {
    IntegratorConfig cfg;
    cfg.method = m;
    cfg.t_end = 3.0;
    cfg.dt_max = 0.1;
    cfg.sample_interval = 0.5;
    int count = 0;
    integrate_ode(zero, Scalar1(Scalar1::Constant(2.0)), cfg, no_post, [&](double, const Scalar1& y) {
      CHECK(y[0] == 2.0);
      ++count;
      return true;
    });
    CHECK(count == 7);
  }
}

TEST_CASE("divergence is reported with its time") {
  auto blowup = [](const Scalar1& y, double) -> Scalar1 { return y.cwiseProduct(y); };
  IntegratorConfig cfg;
  cfg.method = Method::kRk4;
  cfg.dt = 0.01;
  cfg.t_end = 5.0;
  cfg.sample_interval = 0.1;
  const auto status = integrate_ode(blowup, Scalar1(Scalar1::Constant(1.0)), cfg, no_post,
                                    [](double, const Scalar1&) { return true; });
  CHECK(status.code == IntegrationStatus::Code::kDiverged);
  CHECK(status.time > 0.9);
  CHECK(status.time < 1.2);
}

TEST_CASE("step-size underflow in adaptive mode") {
  // Finite-time blow-up that the controller chases into tiny steps.
  auto blowup = [](const Scalar1& y, double) -> Scalar1 { return y.cwiseProduct(y); };
  IntegratorConfig cfg;
  cfg.t_end = 2.0;
  cfg.dt_max = 0.1;
  cfg.dt_min = 1e-6;
  cfg.sample_interval = 0.5;
  const auto status = integrate_ode(blowup, Scalar1(Scalar1::Constant(1.0)), cfg, no_post,
                                    [](double, const Scalar1&) { return true; });
  CHECK_FALSE(status.ok());
  CHECK(status.code == IntegrationStatus::Code::kStepUnderflow);
  CHECK(status.time == doctest::Approx(1.0).epsilon(1e-2));
}

TEST_CASE("config validation") {
  IntegratorConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.t_end = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.rtol = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.dt = -1.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);

  ModelParams p;
  p.Omega_C = 2.0;
  p.Omega_D = 0.5;
  CHECK(IntegratorConfig{}.resolved(p).dt_max == doctest::Approx(0.01 * M_PI));
  CHECK(IntegratorConfig{}.resolved(ModelParams{}).dt_max == doctest::Approx(0.02 * M_PI));
}

TEST_CASE("sample_times") {
  const auto s = sample_times(1.0, 0.25);
  CHECK(s == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  const auto u = sample_times(1.1, 0.5);
  CHECK(u == std::vector<double>{0.0, 0.5, 1.0, 1.1});
}

TEST_CASE("full model without drive stays at the trivial mean") {
  ModelParams p = figure_base_params();
  p.drive_E = 0.0;
  p.chi = {4.5e-4, 4.5e-4};
  p.mu = 0.03;
  IntegratorConfig cfg;
  cfg.t_end = 300.0;
  cfg.sample_interval = 1.0;
  const auto traj = integrate(MeanState{}, CovarianceState::random_psd(1), p, cfg);
  REQUIRE(traj.status.ok());
  for (const auto& m : traj.mean) CHECK(m.values.isZero(0.0));
  for (const auto& c : traj.cov) CHECK(c.max_asymmetry() <= 1e-10 * (1.0 + c.V.cwiseAbs().maxCoeff()));
  // Optical block relaxes to the vacuum value 1/2 on the 1/kappa scale.
  const auto& V = traj.cov.back().V;
  CHECK(V(2, 2) == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(V(7, 7) == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(V(2, 3) == doctest::Approx(0.0).scale(1.0).epsilon(1e-6));
}

TEST_CASE("trajectory samples are increasing, finite and symmetric") {
  auto preset = find_preset("fig4");
  REQUIRE(preset);
  IntegratorConfig cfg;
  cfg.t_end = 100.0;
  const auto traj = integrate(MeanState{}, CovarianceState::random_psd(1), preset->params, cfg);
  REQUIRE(traj.status.ok());
  CHECK(traj.size() == 2001);
  for (std::size_t k = 1; k < traj.size(); ++k) CHECK(traj.t[k] > traj.t[k - 1]);
  for (std::size_t k = 0; k < traj.size(); ++k) {
    CHECK(traj.mean[k].finite());
    CHECK(traj.cov[k].max_asymmetry() <= 1e-10 * (1.0 + traj.cov[k].V.cwiseAbs().maxCoeff()));
    CHECK((traj.cov[k].V.diagonal().array() >= 0.0).all());
  }
  const auto lean = integrate(MeanState{}, CovarianceState::random_psd(1), preset->params, cfg, false);
  CHECK(lean.cov.empty());
  CHECK(lean.s_q == traj.s_q);
}

TEST_CASE("integration is deterministic") {
  auto preset = find_preset("fig9");
  IntegratorConfig cfg;
  cfg.t_end = 50.0;
  const auto a = integrate(MeanState{}, CovarianceState::random_psd(4), preset->params, cfg);
  const auto b = integrate(MeanState{}, CovarianceState::random_psd(4), preset->params, cfg);
  CHECK(a.s_q == b.s_q);
  for (std::size_t k = 0; k < a.size(); ++k) CHECK(a.mean[k].values == b.mean[k].values);
}
