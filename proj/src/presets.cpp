#include "kerrsync/presets.hpp"

#include <algorithm>

namespace kerrsync {

namespace {

constexpr double kChiReference = 4.5e-4;
constexpr double kChiMax = 6e-4;

// (mu, lambda) settings of the four-curve coupling studies.
SweepAxis four_couplings() {
  return {{"mu", "lambda"}, {{0.048, 0.03, 0.0, 0.0}, {0.0, 0.0, 0.03, 0.01}}};
}

SweepAxis two_couplings() {
  return {{"mu", "lambda"}, {{0.03, 0.0}, {0.0, 0.03}}};
}

// Direct-coupling curve (lambda = 0) followed by the fiber curve (mu = 0).
SweepAxis coupling_strength_curves(std::size_t n) {
  const auto strengths = linspace(0.0, 0.06, n);
  SweepAxis axis{{"mu", "lambda"}, {{}, {}}};
  for (double s : strengths) {
    axis.values[0].push_back(s);
    axis.values[1].push_back(0.0);
  }
  for (double s : strengths) {
    axis.values[0].push_back(0.0);
    axis.values[1].push_back(s);
  }
  return axis;
}

ModelParams detuning_modulated(double eta, double Omega) {
  ModelParams p = figure_base_params();
  p.eta_C = eta;
  p.Omega_C = Omega;
  return p;
}

ModelParams drive_modulated(double eta, double Omega) {
  ModelParams p = figure_base_params();
  p.eta_D = eta;
  p.Omega_D = Omega;
  return p;
}

ModelParams with_chi(ModelParams p, double chi) {
  p.chi = {chi, chi};
  return p;
}

ModelParams with_coupling(ModelParams p, double mu, double lambda) {
  p.mu = mu;
  p.lambda_ = lambda;
  return p;
}

}  // namespace

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n == 0) return {};
  if (n == 1) return {lo};
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  out.back() = hi;
  return out;
}

ModelParams figure_base_params() {
  ModelParams p;
  p.delta = {1.0, 1.005};
  p.omega = p.delta;
  p.g = {0.005, 0.005};
  p.drive_E = 100.0;
  p.kappa = 0.15;
  p.gamma = 0.005;
  p.n_b = 0.0;
  return p;
}

std::optional<Preset> find_preset(const std::string& name, std::size_t n) {
  n = std::max<std::size_t>(n, 2);
  const auto chi_axis = SweepAxis::single("chi", linspace(0.0, kChiMax, n));

  if (name == "fig2a")
    return Preset{name, "S_q vs chi, detuning modulation eta_C=1, Omega_C=1, four couplings",
                  detuning_modulated(1.0, 1.0), {four_couplings(), chi_axis}};
  if (name == "fig2b")
    return Preset{name, "S_q vs mu (lambda=0) then vs lambda (mu=0), chi=4.5e-4, eta_C=1, Omega_C=1",
                  with_chi(detuning_modulated(1.0, 1.0), kChiReference),
                  {coupling_strength_curves(n)}};
  if (name == "fig3a")
    return Preset{name, "S_q vs Omega_C with eta_C=1, chi=4.5e-4",
                  with_chi(detuning_modulated(1.0, 1.0), kChiReference),
                  {two_couplings(), SweepAxis::single("Omega_C", linspace(0.1, 2.5, n))}};
  if (name == "fig3b")
    return Preset{name, "S_q vs eta_C with Omega_C=1, chi=4.5e-4",
                  with_chi(detuning_modulated(1.0, 1.0), kChiReference),
                  {two_couplings(), SweepAxis::single("eta_C", linspace(0.0, 3.0, n))}};
  if (name == "fig6a")
    return Preset{name, "S_q vs chi, drive modulation eta_D=0.5, Omega_D=1, four couplings",
                  drive_modulated(0.5, 1.0), {four_couplings(), chi_axis}};
  if (name == "fig6b")
    return Preset{name, "S_q vs mu (lambda=0) then vs lambda (mu=0), chi=4.5e-4, eta_D=0.5, Omega_D=1",
                  with_chi(drive_modulated(0.5, 1.0), kChiReference),
                  {coupling_strength_curves(n)}};
  if (name == "fig7a")
    return Preset{name, "S_q vs Omega_D with eta_D=0.5, chi=4.5e-4",
                  with_chi(drive_modulated(0.5, 1.0), kChiReference),
                  {two_couplings(), SweepAxis::single("Omega_D", linspace(0.1, 3.0, n))}};
  if (name == "fig7b")
    return Preset{name, "S_q vs eta_D with Omega_D=1, chi=4.5e-4",
                  with_chi(drive_modulated(0.5, 1.0), kChiReference),
                  {two_couplings(), SweepAxis::single("eta_D", linspace(0.0, 2.0, n))}};

  if (name == "fig4")
    return Preset{name, "trajectory, Omega_C=1, eta_C=1, mu=0.03, lambda=0, chi=4.5e-4",
                  with_coupling(with_chi(detuning_modulated(1.0, 1.0), kChiReference), 0.03, 0.0),
                  {}};
  if (name == "fig5")
    return Preset{name, "trajectory, Omega_C=1, eta_C=1, mu=0, lambda=0.03, chi=4.5e-4",
                  with_coupling(with_chi(detuning_modulated(1.0, 1.0), kChiReference), 0.0, 0.03),
                  {}};
  if (name == "fig8")
    return Preset{name, "trajectory, Omega_D=1, eta_D=0.5, mu=0.03, lambda=0, chi=4.5e-4",
                  with_coupling(with_chi(drive_modulated(0.5, 1.0), kChiReference), 0.03, 0.0),
                  {}};
  if (name == "fig9")
    return Preset{name, "trajectory, Omega_D=1, eta_D=0.5, mu=0, lambda=0.03, chi=4.5e-4",
                  with_coupling(with_chi(drive_modulated(0.5, 1.0), kChiReference), 0.0, 0.03),
                  {}};
  return std::nullopt;
}

std::vector<std::string> preset_names() {
  return {"fig2a", "fig2b", "fig3a", "fig3b", "fig4", "fig5",
          "fig6a", "fig6b", "fig7a", "fig7b", "fig8", "fig9"};
}

}  // namespace kerrsync
