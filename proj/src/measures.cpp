#include "kerrsync/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace kerrsync {

double sync_q_instant(const Mat8& V) {
  const int q1 = idx::q(0), p1 = idx::p(0), q2 = idx::q(1), p2 = idx::p(1);
  const double denom = V(q1, q1) + V(p1, p1) + V(q2, q2) + V(p2, p2) -
                       V(q1, q2) - V(q2, q1) - V(p1, p2) - V(p2, p1);
  if (!(denom > 1e-12)) throw DegenerateCovariance("degenerate covariance");
  return 2.0 / denom;
}

double sync_c_instant(const MeanState& mean) {
  const double q_minus = (mean.q(0) - mean.q(1)) / std::sqrt(2.0);
  const double p_minus = (mean.p(0) - mean.p(1)) / std::sqrt(2.0);
  const double err = q_minus * q_minus + p_minus * p_minus;
  if (err * kSyncCompleteCap <= 1.0) return kSyncCompleteCap;
  return 1.0 / err;
}

std::span<const double> trailing_window(std::span<const double> series,
                                        double window_fraction) {
  if (!(window_fraction > 0.0 && window_fraction <= 1.0))
    throw MeasureError("window_fraction must lie in (0, 1]");
  if (series.empty()) throw MeasureError("empty window");
  const auto n = series.size();
  auto count = static_cast<std::size_t>(std::ceil(window_fraction * static_cast<double>(n) - 1e-9));
  count = std::clamp<std::size_t>(count, 1, n);
  return series.subspan(n - count);
}

double steady_average(std::span<const double> series, double window_fraction) {
  const auto w = trailing_window(series, window_fraction);
  return std::accumulate(w.begin(), w.end(), 0.0) / static_cast<double>(w.size());
}

double limit_cycle_amplitude(std::span<const double> series, double window_fraction) {
  const auto w = trailing_window(series, window_fraction);
  const auto [lo, hi] = std::minmax_element(w.begin(), w.end());
  return 0.5 * (*hi - *lo);
}

namespace {

std::vector<double> demeaned(std::span<const double> s) {
  const double m = std::accumulate(s.begin(), s.end(), 0.0) / static_cast<double>(s.size());
  std::vector<double> out(s.size());
  std::transform(s.begin(), s.end(), out.begin(), [m](double v) { return v - m; });
  return out;
}

// Cross-correlation at integer lag k, normalized by the overlap length:
// sum_i a[i] b[i + k] / (n - |k|).
double correlation_at(const std::vector<double>& a, const std::vector<double>& b, long k) {
  const long n = static_cast<long>(a.size());
  const long lo = std::max(0L, -k);
  const long hi = std::min(n, n - k);
  double acc = 0.0;
  for (long i = lo; i < hi; ++i) acc += a[i] * b[i + k];
  return acc / static_cast<double>(hi - lo);
}

long dominant_period_samples(const std::vector<double>& a) {
  const long n = static_cast<long>(a.size());
  const long max_lag = n / 2;
  bool went_negative = false;
  double prev = correlation_at(a, a, 0);
  if (!(prev > 0.0)) throw MeasureError("series has no oscillation");
  for (long k = 1; k + 1 <= max_lag; ++k) {
    const double r = correlation_at(a, a, k);
    if (r < 0.0) went_negative = true;
    if (went_negative && r > 0.0) {
      const double next = correlation_at(a, a, k + 1);
      if (r >= prev && r >= next) return k;
    }
    prev = r;
  }
  throw MeasureError("no dominant period in series");
}

}  // namespace

double dominant_period(std::span<const double> series, double sample_interval) {
  return static_cast<double>(dominant_period_samples(demeaned(series))) * sample_interval;
}

double phase_lag(std::span<const double> a, std::span<const double> b,
                 double sample_interval) {
  if (a.size() != b.size()) throw MeasureError("series lengths differ");
  if (a.size() < 8) throw MeasureError("series too short");
  const auto da = demeaned(a);
  const auto db = demeaned(b);
  const long period = dominant_period_samples(da);
  if (4 * period > static_cast<long>(da.size()))
    throw MeasureError("series too short (< 4 dominant periods)");

  long best = 0;
  double best_value = correlation_at(da, db, 0);
  for (long k = 1; k <= period; ++k) {
    for (long lag : {k, -k}) {
      const double r = correlation_at(da, db, lag);
      if (r > best_value) {
        best_value = r;
        best = lag;
      }
    }
  }
  // Wrap into (-P/2, P/2].
  if (2 * best > period) best -= period;
  if (2 * best <= -period) best += period;
  return static_cast<double>(best) * sample_interval;
}

}  // namespace kerrsync
