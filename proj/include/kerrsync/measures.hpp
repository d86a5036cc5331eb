#pragma once

#include <span>
#include <stdexcept>

#include "kerrsync/model.hpp"

namespace kerrsync {

class DegenerateCovariance : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class MeasureError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// S_c values are capped here; a capped value means the two mean
/// trajectories coincide exactly ("complete" synchronization).
inline constexpr double kSyncCompleteCap = 1e12;

/// Quantum synchronization measure <dq_-^2 + dp_-^2>^-1 with
/// dq_- = (dq1 - dq2)/sqrt(2), dp_- = (dp1 - dp2)/sqrt(2), i.e.
///   2 / (V11 + V22 + V55 + V66 - V15 - V51 - V26 - V62)   (1-based).
/// Equals 1 for the vacuum covariance I/2. Throws DegenerateCovariance when
/// the denominator is <= 1e-12.
double sync_q_instant(const Mat8& V);

/// Classical measure 1 / (q_-^2 + p_-^2) of the mean values, capped at
/// kSyncCompleteCap.
double sync_c_instant(const MeanState& mean);

/// Arithmetic mean over the trailing `window_fraction` of the samples.
double steady_average(std::span<const double> series, double window_fraction);

/// (max - min) / 2 over the trailing window.
double limit_cycle_amplitude(std::span<const double> series, double window_fraction);

/// Trailing window of a series (at least one sample). Throws MeasureError on
/// an empty series or a fraction outside (0, 1].
std::span<const double> trailing_window(std::span<const double> series,
                                        double window_fraction);

/// Dominant period of a mean-removed series from the first autocorrelation
/// peak following its first negative lobe. Throws MeasureError when the
/// autocorrelation has no such peak.
double dominant_period(std::span<const double> series, double sample_interval);

/// Lag (time units) by which `b` trails `a`, from the maximum of the
/// mean-removed cross-correlation over lags within one dominant period of `a`.
/// The result is wrapped into (-P/2, P/2]. Requires at least four periods.
double phase_lag(std::span<const double> a, std::span<const double> b,
                 double sample_interval);

struct SteadyStats {
  double sq_mean = 0.0;
  double sc_mean = 0.0;
  double amp_q1 = 0.0;
  double amp_q2 = 0.0;
  double amp_p1 = 0.0;
  double amp_p2 = 0.0;
  double phase_lag = 0.0;  // NaN when the steady window has no usable period
};

}  // namespace kerrsync
