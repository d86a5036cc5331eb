#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace kerrsync {

using Vec8 = Eigen::Matrix<double, 8, 1>;
using Mat8 = Eigen::Matrix<double, 8, 8>;

// Component ordering shared by the mean state and the fluctuation vector:
// (q1, p1, x1, y1, q2, p2, x2, y2). For the mean state the optical slots hold
// (Re alpha, Im alpha); for fluctuations they hold the quadratures
// dx = sqrt(2) Re(da), dy = sqrt(2) Im(da).
namespace idx {
constexpr int kQ = 0;
constexpr int kP = 1;
constexpr int kRe = 2;
constexpr int kIm = 3;
constexpr int kStride = 4;

constexpr int q(int j) { return kStride * j + kQ; }
constexpr int p(int j) { return kStride * j + kP; }
constexpr int re(int j) { return kStride * j + kRe; }
constexpr int im(int j) { return kStride * j + kIm; }
}  // namespace idx

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Physical constants of two Kerr optomechanical cavities, in units of the
/// first mechanical frequency (hbar = 1). Pair fields are indexed by cavity.
///
/// kappa and gamma default to calibration values; they are not measured
/// quantities of any particular device.
struct ModelParams {
  std::array<double, 2> omega{1.0, 1.005};
  std::array<double, 2> delta{1.0, 1.005};
  std::array<double, 2> chi{0.0, 0.0};
  std::array<double, 2> g{0.005, 0.005};
  double kappa = 0.15;
  double gamma = 0.005;
  double drive_E = 100.0;
  double eta_C = 0.0;
  double Omega_C = 0.0;
  double eta_D = 0.0;
  double Omega_D = 0.0;
  double mu = 0.0;
  double lambda_ = 0.0;
  double n_b = 0.0;

  bool operator==(const ModelParams&) const = default;
};

/// Throws ConfigError naming the offending field; otherwise returns `raw`.
ModelParams validate_params(const ModelParams& raw);

/// 1 + eta cos(Omega t).
inline double modulation_factor(double t, double eta, double Omega) {
  return 1.0 + eta * std::cos(Omega * t);
}

/// Exchange the roles of cavity 1 and cavity 2.
ModelParams swap_subsystems(const ModelParams& p);

struct MeanState {
  Vec8 values = Vec8::Zero();

  double q(int j) const { return values[idx::q(j)]; }
  double p(int j) const { return values[idx::p(j)]; }
  double re(int j) const { return values[idx::re(j)]; }
  double im(int j) const { return values[idx::im(j)]; }
  double intensity(int j) const { return re(j) * re(j) + im(j) * im(j); }

  bool finite() const { return values.allFinite(); }
  MeanState swapped() const;
};

/// Symmetric 8x8 covariance V_ij = <u_i u_j + u_j u_i>/2 of the fluctuations.
struct CovarianceState {
  Mat8 V = Mat8::Zero();

  static CovarianceState vacuum() { return {0.5 * Mat8::Identity()}; }
  /// A A^T with A_ij uniform in [0, 1); deterministic in `seed`.
  static CovarianceState random_psd(std::uint64_t seed);

  void symmetrize() { V = 0.5 * (V + V.transpose()).eval(); }
  bool finite() const { return V.allFinite(); }
  double max_asymmetry() const;
  CovarianceState swapped() const;
};

/// Permutation that exchanges the two 4-component subsystem blocks.
Mat8 subsystem_swap_matrix();

}  // namespace kerrsync
