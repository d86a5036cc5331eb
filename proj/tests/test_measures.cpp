#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "kerrsync/measures.hpp"

using namespace kerrsync;

namespace {

std::vector<double> sampled(double dt, std::size_t n, auto&& f) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = f(static_cast<double>(i) * dt);
  return out;
}

}  // namespace

TEST_CASE("sync_q_instant reference values") {
  CHECK(sync_q_instant(0.5 * Mat8::Identity()) == 1.0);
  CHECK(sync_q_instant(Mat8::Identity()) == 0.5);

  Mat8 V = Mat8::Zero();
  const double a = 0.7, b = 1.3;
  V(0, 0) = V(4, 4) = V(0, 4) = V(4, 0) = a;
  V(1, 1) = V(5, 5) = V(1, 5) = V(5, 1) = b;
  CHECK_THROWS_WITH_AS(sync_q_instant(V), "degenerate covariance", DegenerateCovariance);
  CHECK_THROWS_AS(sync_q_instant(Mat8::Zero()), DegenerateCovariance);
}

TEST_CASE("sync_q_instant uses the q-q and p-p cross terms") {
  // Correlating q1 with q2 lowers <dq_-^2>; correlating q1 with p2 does not.
  Mat8 V = 0.5 * Mat8::Identity();
  V(0, 4) = V(4, 0) = 0.25;
  CHECK(sync_q_instant(V) == doctest::Approx(2.0 / 1.5));
  Mat8 W = 0.5 * Mat8::Identity();
  W(0, 5) = W(5, 0) = 0.25;
  CHECK(sync_q_instant(W) == 1.0);
}

TEST_CASE("sync_q_instant properties") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> scale(0.1, 10.0);
  for (int k = 0; k < 50; ++k) {
    const auto cov = CovarianceState::random_psd(100 + k);
    const double s = sync_q_instant(cov.V);
    CHECK(s > 0.0);
    const double c = scale(rng);
    CHECK(sync_q_instant(c * cov.V) == doctest::Approx(s / c).epsilon(1e-14));
    CHECK(std::abs(sync_q_instant(cov.swapped().V) - s) <= 1e-12 * s);
  }
}

TEST_CASE("sync_c_instant") {
  MeanState m;
  m.values << 3, -2, 10, 1, 3, -2, 7, 4;
  CHECK(sync_c_instant(m) == kSyncCompleteCap);

  m.values[idx::q(0)] = 3.0 + std::sqrt(2.0);
  CHECK(sync_c_instant(m) == doctest::Approx(1.0).epsilon(1e-14));

  m.values[idx::q(0)] = 5.0;
  m.values[idx::p(0)] = 0.0;
  CHECK(sync_c_instant(m) == doctest::Approx(0.25).epsilon(1e-14));

  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-100.0, 100.0);
  for (int k = 0; k < 50; ++k) {
    MeanState a;
    for (int i = 0; i < 8; ++i) a.values[i] = u(rng);
    const double shift = u(rng);
    MeanState b = a;
    for (int j = 0; j < 2; ++j) {
      b.values[idx::q(j)] += shift;
      b.values[idx::p(j)] += shift;
    }
    CHECK(sync_c_instant(b) == doctest::Approx(sync_c_instant(a)).epsilon(1e-9));
    CHECK(sync_c_instant(a.swapped()) == doctest::Approx(sync_c_instant(a)).epsilon(1e-14));
  }
}

TEST_CASE("steady_average") {
  const std::vector<double> constant(37, 4.25);
  CHECK(steady_average(constant, 0.4) == 4.25);

  const std::vector<double> tail = {0, 0, 0, 0, 0, 0, 0, 0, 1, 1};
  CHECK(steady_average(tail, 0.2) == 1.0);

  const double dt = 0.01;
  const auto n = static_cast<std::size_t>(std::round(10 * std::numbers::pi / dt));
  const auto s = sampled(dt, n, [](double t) { return std::sin(t); });
  CHECK(std::abs(steady_average(s, 1.0)) < 1e-3);

  CHECK_THROWS_AS(steady_average(std::vector<double>{}, 0.4), MeasureError);
  CHECK_THROWS_AS(steady_average(constant, 0.0), MeasureError);
  CHECK_THROWS_AS(steady_average(constant, 1.5), MeasureError);
}

TEST_CASE("limit_cycle_amplitude") {
  CHECK(limit_cycle_amplitude(std::vector<double>(20, 3.0), 0.5) == 0.0);
  const auto s = sampled(0.01, 2000, [](double t) { return 100.0 * std::sin(t); });
  CHECK(limit_cycle_amplitude(s, 1.0) == doctest::Approx(100.0).epsilon(0.01));
  const auto o = sampled(0.01, 2000, [](double t) { return 5.0 + 3.0 * std::sin(t); });
  CHECK(limit_cycle_amplitude(o, 1.0) == doctest::Approx(3.0).epsilon(0.01));
  CHECK_THROWS_AS(limit_cycle_amplitude(std::vector<double>{}, 1.0), MeasureError);
}

TEST_CASE("phase_lag") {
  const double dt = 0.01;
  const std::size_t n = 5000;  // ~8 periods
  const auto a = sampled(dt, n, [](double t) { return std::sin(t); });
  CHECK(phase_lag(a, a, dt) == 0.0);

  const auto shifted = sampled(dt, n, [](double t) { return std::sin(t - 0.3); });
  CHECK(phase_lag(a, shifted, dt) == doctest::Approx(0.3).epsilon(0.01 / 0.3));
  CHECK(phase_lag(shifted, a, dt) == doctest::Approx(-0.3).epsilon(0.01 / 0.3));

  const auto anti = sampled(dt, n, [](double t) { return -std::sin(t); });
  // Half a period is ambiguous in sign once the period is quantized.
  CHECK(std::abs(std::abs(phase_lag(a, anti, dt)) - std::numbers::pi) <= dt + 1e-12);

  // Offsets and amplitudes do not matter.
  const auto offset = sampled(dt, n, [](double t) { return 40.0 + 3.0 * std::sin(t - 0.3); });
  CHECK(phase_lag(a, offset, dt) == doctest::Approx(0.3).epsilon(0.01 / 0.3));

  CHECK(dominant_period(a, dt) == doctest::Approx(2 * std::numbers::pi).epsilon(0.01));

  const auto short_a = sampled(dt, 1500, [](double t) { return std::sin(t); });
  CHECK_THROWS_WITH_AS(phase_lag(short_a, short_a, dt), "series too short (< 4 dominant periods)",
                       MeasureError);
  CHECK_THROWS_AS(phase_lag(a, short_a, dt), MeasureError);
  CHECK_THROWS_AS(phase_lag(std::vector<double>(100, 1.0), std::vector<double>(100, 1.0), dt),
                  MeasureError);
}
