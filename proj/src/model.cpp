#include "kerrsync/model.hpp"

#include <random>

namespace kerrsync {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

}  // namespace

ModelParams validate_params(const ModelParams& raw) {
  require(raw.kappa > 0.0, "kappa must be positive");
  require(raw.gamma > 0.0, "gamma must be positive");
  require(raw.omega[0] > 0.0 && raw.omega[1] > 0.0, "omega must be positive");
  require(raw.chi[0] >= 0.0 && raw.chi[1] >= 0.0, "chi must be non-negative");
  require(raw.n_b >= 0.0, "n_b must be non-negative");

  const double scalars[] = {raw.kappa,  raw.gamma,   raw.drive_E, raw.eta_C,
                            raw.Omega_C, raw.eta_D, raw.Omega_D, raw.mu,
                            raw.lambda_, raw.n_b};
  bool all_finite = true;
  for (double v : scalars) all_finite = all_finite && std::isfinite(v);
  for (int j = 0; j < 2; ++j) {
    all_finite = all_finite && std::isfinite(raw.delta[j]) &&
                 std::isfinite(raw.g[j]) && std::isfinite(raw.chi[j]) &&
                 std::isfinite(raw.omega[j]);
  }
  require(all_finite, "parameters must be finite");
  return raw;
}

ModelParams swap_subsystems(const ModelParams& p) {
  ModelParams s = p;
  auto flip = [](std::array<double, 2> a) { return std::array<double, 2>{a[1], a[0]}; };
  s.omega = flip(p.omega);
  s.delta = flip(p.delta);
  s.chi = flip(p.chi);
  s.g = flip(p.g);
  return s;
}

Mat8 subsystem_swap_matrix() {
  Mat8 P = Mat8::Zero();
  for (int k = 0; k < idx::kStride; ++k) {
    P(k, k + idx::kStride) = 1.0;
    P(k + idx::kStride, k) = 1.0;
  }
  return P;
}

MeanState MeanState::swapped() const {
  MeanState s;
  s.values << values.tail<4>(), values.head<4>();
  return s;
}

CovarianceState CovarianceState::random_psd(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Mat8 A;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) A(i, j) = unit(rng);
  CovarianceState c{A * A.transpose()};
  c.symmetrize();
  return c;
}

double CovarianceState::max_asymmetry() const {
  return (V - V.transpose()).cwiseAbs().maxCoeff();
}

CovarianceState CovarianceState::swapped() const {
  CovarianceState s;
  s.V.topLeftCorner<4, 4>() = V.bottomRightCorner<4, 4>();
  s.V.bottomRightCorner<4, 4>() = V.topLeftCorner<4, 4>();
  s.V.topRightCorner<4, 4>() = V.bottomLeftCorner<4, 4>();
  s.V.bottomLeftCorner<4, 4>() = V.topRightCorner<4, 4>();
  return s;
}

}  // namespace kerrsync
