#pragma once

#include "kerrsync/model.hpp"

namespace kerrsync {

using DriftMatrix = Mat8;
using JointVector = Eigen::Matrix<double, 72, 1>;

/// Diagonal noise matrix diag(0, gamma(2n_b+1), kappa, kappa, ...).
struct NoiseMatrix {
  Vec8 diagonal = Vec8::Zero();

  Mat8 dense() const { return diagonal.asDiagonal(); }
};

/// Time derivative of the classical mean values. The complex field equation
/// is split into its real and imaginary parts.
Vec8 mean_field_rhs(const MeanState& state, const ModelParams& params, double t);

/// Linearized generator of the fluctuation vector (dq, dp, dx, dy) x 2,
/// i.e. the Jacobian of mean_field_rhs expressed in the sqrt(2)-scaled
/// quadrature frame. Kerr terms enter through
///   F+- = Delta_j f_C(t) + g_j q_j + 4 chi_j |alpha_j|^2 +- 2 chi_j (Re^2 - Im^2)
///   G+- = -kappa +- 4 chi_j Re Im
/// with the dx row carrying (G-, -F-) and the dy row (F+, G+).
DriftMatrix drift_matrix(const MeanState& state, const ModelParams& params, double t);

NoiseMatrix noise_matrix(const ModelParams& params);

/// M V + V M^T + N. For symmetric V the result is returned exactly symmetric.
Mat8 lyapunov_rhs(const Mat8& V, const DriftMatrix& M, const NoiseMatrix& N);

struct JointDerivative {
  Vec8 mean;
  Mat8 cov;
};

JointDerivative coupled_rhs(const MeanState& mean, const CovarianceState& V,
                            const ModelParams& params, double t);

// Packing of (mean, V) into one 72-vector: 8 means, then V column-major.
JointVector pack_joint(const Vec8& mean, const Mat8& cov);
void unpack_joint(const JointVector& y, Vec8& mean, Mat8& cov);

}  // namespace kerrsync
