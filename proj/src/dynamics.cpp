#include "kerrsync/dynamics.hpp"

#include <cmath>

namespace kerrsync {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;

struct CavityTerms {
  double detuning;  // Delta_j * (1 + eta_C cos(Omega_C t))
  double drive;     // E * (1 + eta_D cos(Omega_D t))
};

CavityTerms cavity_terms(const ModelParams& p, int j, double t) {
  return {p.delta[j] * modulation_factor(t, p.eta_C, p.Omega_C),
          p.drive_E * modulation_factor(t, p.eta_D, p.Omega_D)};
}

}  // namespace

Vec8 mean_field_rhs(const MeanState& s, const ModelParams& p, double t) {
  Vec8 d;
  for (int j = 0; j < 2; ++j) {
    const int other = 1 - j;
    const auto [detuning, drive] = cavity_terms(p, j, t);
    const double a = s.re(j);
    const double b = s.im(j);
    const double n = a * a + b * b;
    // Total phase rotation rate of alpha_j.
    const double rotation = detuning + 2.0 * p.chi[j] * n + p.g[j] * s.q(j);

    d[idx::q(j)] = p.omega[j] * s.p(j);
    d[idx::p(j)] = -p.omega[j] * s.q(j) - p.gamma * s.p(j) + p.g[j] * n +
                   p.mu * s.q(other);
    d[idx::re(j)] = -p.kappa * a - rotation * b + drive + p.lambda_ * s.im(other);
    d[idx::im(j)] = -p.kappa * b + rotation * a - p.lambda_ * s.re(other);
  }
  return d;
}

DriftMatrix drift_matrix(const MeanState& s, const ModelParams& p, double t) {
  DriftMatrix M = DriftMatrix::Zero();
  for (int j = 0; j < 2; ++j) {
    const int other = 1 - j;
    const double detuning = cavity_terms(p, j, t).detuning;
    const double a = s.re(j);
    const double b = s.im(j);
    const double chi = p.chi[j];
    const double base = detuning + p.g[j] * s.q(j) + 4.0 * chi * (a * a + b * b);
    const double f_plus = base + 2.0 * chi * (a * a - b * b);
    const double f_minus = base - 2.0 * chi * (a * a - b * b);
    const double g_plus = -p.kappa + 4.0 * chi * a * b;
    const double g_minus = -p.kappa - 4.0 * chi * a * b;

    const int q = idx::q(j), pp = idx::p(j), x = idx::re(j), y = idx::im(j);

    M(q, pp) = p.omega[j];

    M(pp, q) = -p.omega[j];
    M(pp, pp) = -p.gamma;
    M(pp, x) = kSqrt2 * p.g[j] * a;
    M(pp, y) = kSqrt2 * p.g[j] * b;
    M(pp, idx::q(other)) = p.mu;

    M(x, q) = -kSqrt2 * p.g[j] * b;
    M(x, x) = g_minus;
    M(x, y) = -f_minus;
    M(x, idx::im(other)) = p.lambda_;

    M(y, q) = kSqrt2 * p.g[j] * a;
    M(y, x) = f_plus;
    M(y, y) = g_plus;
    M(y, idx::re(other)) = -p.lambda_;
  }
  return M;
}

NoiseMatrix noise_matrix(const ModelParams& p) {
  const double thermal = p.gamma * (2.0 * p.n_b + 1.0);
  NoiseMatrix N;
  for (int j = 0; j < 2; ++j) {
    N.diagonal[idx::p(j)] = thermal;
    N.diagonal[idx::re(j)] = p.kappa;
    N.diagonal[idx::im(j)] = p.kappa;
  }
  return N;
}

Mat8 lyapunov_rhs(const Mat8& V, const DriftMatrix& M, const NoiseMatrix& N) {
  // V M^T == (M V)^T for symmetric V.
  const Mat8 MV = M * V;
  Mat8 dV = MV + MV.transpose();
  dV.diagonal() += N.diagonal;
  return dV;
}

JointDerivative coupled_rhs(const MeanState& mean, const CovarianceState& cov,
                            const ModelParams& params, double t) {
  return {mean_field_rhs(mean, params, t),
          lyapunov_rhs(cov.V, drift_matrix(mean, params, t), noise_matrix(params))};
}

JointVector pack_joint(const Vec8& mean, const Mat8& cov) {
  JointVector y;
  y.head<8>() = mean;
  y.tail<64>() = Eigen::Map<const Eigen::Matrix<double, 64, 1>>(cov.data());
  return y;
}

void unpack_joint(const JointVector& y, Vec8& mean, Mat8& cov) {
  mean = y.head<8>();
  Eigen::Map<Eigen::Matrix<double, 64, 1>>(cov.data()) = y.tail<64>();
}

}  // namespace kerrsync
