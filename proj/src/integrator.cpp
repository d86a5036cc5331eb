#include "kerrsync/integrator.hpp"

#include <numbers>

#include "kerrsync/measures.hpp"

namespace kerrsync {

void IntegratorConfig::validate() const {
  if (!(t_end > 0.0)) throw ConfigError("t_end must be positive");
  if (!(sample_interval > 0.0)) throw ConfigError("sample_interval must be positive");
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  if (method == Method::kDormandPrince) {
    if (!(rtol > 0.0) || !(atol > 0.0)) throw ConfigError("rtol and atol must be positive");
    if (!(dt_min > 0.0)) throw ConfigError("dt_min must be positive");
    if (dt_max > 0.0 && dt_max < dt_min) throw ConfigError("dt_max must be >= dt_min");
    if (sample_interval < dt_min) throw ConfigError("sample_interval must be >= dt_min");
  }
}

IntegratorConfig IntegratorConfig::resolved(const ModelParams& params) const {
  IntegratorConfig out = *this;
  if (out.dt_max <= 0.0) {
    const double fastest = std::max({params.Omega_C, params.Omega_D, 1.0});
    out.dt_max = 0.01 * 2.0 * std::numbers::pi / fastest;
  }
  return out;
}

std::vector<double> sample_times(double t_end, double sample_interval) {
  std::vector<double> out;
  const auto count = static_cast<std::size_t>(std::floor(t_end / sample_interval + 1e-9));
  out.reserve(count + 2);
  for (std::size_t k = 0; k <= count; ++k) out.push_back(static_cast<double>(k) * sample_interval);
  if (t_end - out.back() > 1e-9 * sample_interval) out.push_back(t_end);
  else out.back() = t_end;
  return out;
}

std::vector<double> Trajectory::component(int index) const {
  std::vector<double> out;
  out.reserve(mean.size());
  for (const auto& m : mean) out.push_back(m.values[index]);
  return out;
}

Trajectory integrate(const MeanState& initial_mean, const CovarianceState& initial_cov,
                     const ModelParams& params, const IntegratorConfig& config,
                     bool keep_covariance) {
  const IntegratorConfig cfg = config.resolved(params);
  const NoiseMatrix noise = noise_matrix(params);

  auto rhs = [&params, &noise](const JointVector& y, double t) {
    MeanState mean;
    Mat8 V;
    unpack_joint(y, mean.values, V);
    return pack_joint(mean_field_rhs(mean, params, t),
                      lyapunov_rhs(V, drift_matrix(mean, params, t), noise));
  };
  auto symmetrize = [](JointVector& y) {
    Eigen::Map<Mat8> V(y.data() + 8);
    V = 0.5 * (V + V.transpose()).eval();
  };

  Trajectory traj;
  const std::size_t expected = sample_times(cfg.t_end, cfg.sample_interval).size();
  traj.t.reserve(expected);
  traj.mean.reserve(expected);
  if (keep_covariance) traj.cov.reserve(expected);
  traj.s_q.reserve(expected);
  traj.s_c.reserve(expected);

  auto observe = [&traj, keep_covariance](double t, const JointVector& y) {
    MeanState mean;
    CovarianceState cov;
    unpack_joint(y, mean.values, cov.V);
    double sq = 0.0;
    try {
      sq = sync_q_instant(cov.V);
    } catch (const DegenerateCovariance& e) {
      traj.status.code = IntegrationStatus::Code::kDegenerateCovariance;
      traj.status.time = t;
      traj.status.message = e.what();
      return false;
    }
    traj.t.push_back(t);
    traj.mean.push_back(mean);
    if (keep_covariance) traj.cov.push_back(cov);
    traj.s_q.push_back(sq);
    traj.s_c.push_back(sync_c_instant(mean));
    return true;
  };

  CovarianceState start = initial_cov;
  start.symmetrize();
  const auto status = integrate_ode(rhs, pack_joint(initial_mean.values, start.V), cfg,
                                    symmetrize, observe);
  if (traj.status.ok()) traj.status = status;
  return traj;
}

}  // namespace kerrsync
