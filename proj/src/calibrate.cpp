#include "wg/calibrate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wg/errors.hpp"

namespace wg {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double kPeakFactor = 5.0;

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Median of the lowest quartile: the off-band background level. The response
// inside a resonant band is genuinely elevated everywhere, so the plain
// median over an in-band scan would swallow the explosion peaks.
double baseline(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const size_t q = std::max<size_t>(1, v.size() / 4);
  return v[q / 2];
}

std::vector<double> scan_norms(const TraceGenerator& generate,
                               const std::vector<double>& ks, const SourceSpec& src) {
  std::vector<double> norms(ks.size(), 0.0);
  for (size_t i = 0; i < ks.size(); ++i) {
    try {
      norms[i] = trace_l2_integral(generate(ks[i], src));
    } catch (const ValidationError&) {
      norms[i] = 0.0;  // forbidden grid point: skip, neighbors carry the peak
    }
  }
  return norms;
}

// Strongest local maximum above factor * baseline; 0 when none qualifies.
double strongest_peak(const std::vector<double>& ks, const std::vector<double>& norms) {
  const double floor = kPeakFactor * baseline(norms);
  double best_k = 0.0, best_v = 0.0;
  for (size_t i = 0; i < norms.size(); ++i) {
    const bool local_max = (i == 0 || norms[i] >= norms[i - 1]) &&
                           (i + 1 == norms.size() || norms[i] >= norms[i + 1]);
    if (local_max && norms[i] > floor && norms[i] > best_v) {
      best_v = norms[i];
      best_k = ks[i];
    }
  }
  return best_k;
}

// All qualifying local maxima, for octave-based mode inference.
std::vector<double> all_peaks(const std::vector<double>& ks, const std::vector<double>& norms) {
  const double floor = kPeakFactor * baseline(norms);
  std::vector<double> peaks;
  for (size_t i = 0; i < norms.size(); ++i) {
    const bool local_max = (i == 0 || norms[i] >= norms[i - 1]) &&
                           (i + 1 == norms.size() || norms[i] >= norms[i + 1]);
    if (local_max && norms[i] > floor) peaks.push_back(ks[i]);
  }
  return peaks;
}

}  // namespace

BoundsEstimate calibrate_bounds(const TraceGenerator& generate,
                                const std::vector<double>& k_scan,
                                const SourceSpec& source_left,
                                const SourceSpec& source_right) {
  if (k_scan.size() < 3) throw ValidationError("calibrate_bounds: scan too short");
  const std::vector<double> norms_l = scan_norms(generate, k_scan, source_left);
  const std::vector<double> norms_r = scan_norms(generate, k_scan, source_right);
  const double peak_l = strongest_peak(k_scan, norms_l);
  const double peak_r = strongest_peak(k_scan, norms_r);
  if (peak_l == 0.0 && peak_r == 0.0)
    throw NumericError("calibrate_bounds: no explosion peak found");

  // Mode inference across octaves: when the scan covers two bands of the same
  // bound the peaks come in pairs (kappa, 2 kappa); reduce to the fundamental.
  auto fundamental = [&](double peak, const std::vector<double>& norms) {
    if (peak == 0.0) return peak;
    for (double p : all_peaks(k_scan, norms))
      if (std::abs(peak / (2.0 * p) - 1.0) < 0.02) return p;
    return peak;
  };
  double fund_l = fundamental(peak_l, norms_l);
  double fund_r = fundamental(peak_r, norms_r);

  // Ternary refinement toward the explosion (the norm grows monotonically as
  // k approaches the forbidden value; the scan peak is only grid-accurate).
  const double step = k_scan[1] - k_scan[0];
  auto refine = [&](double k_peak, const SourceSpec& src) {
    if (k_peak == 0.0) return k_peak;
    auto norm_at = [&](double k) {
      try {
        return trace_l2_integral(generate(k, src));
      } catch (const ValidationError&) {
        return HUGE_VAL;  // forbidden grid point: the maximum is here
      }
    };
    double lo = k_peak - step, hi = k_peak + step;
    for (int it = 0; it < 40 && hi - lo > 1e-7; ++it) {
      const double m1 = lo + (hi - lo) / 3.0;
      const double m2 = hi - (hi - lo) / 3.0;
      if (norm_at(m1) < norm_at(m2))
        lo = m1;
      else
        hi = m2;
    }
    return 0.5 * (lo + hi);
  };
  fund_l = refine(fund_l, source_left);
  fund_r = refine(fund_r, source_right);

  BoundsEstimate est;
  est.mode = 1;
  est.k_peak_thin = std::max(fund_l, fund_r);
  est.k_peak_thick = (fund_l == 0.0 || fund_r == 0.0) ? est.k_peak_thin
                                                      : std::min(fund_l, fund_r);
  est.h_min = est.mode * pi / est.k_peak_thin;
  est.h_max = est.mode * pi / est.k_peak_thick;
  return est;
}

double calibrate_support_edge(const TraceGenerator& generate, double k_fixed,
                              const std::vector<double>& positions) {
  if (positions.size() < 5)
    throw ValidationError("calibrate_support: sweep too short");
  std::vector<double> norms(positions.size());
  for (size_t i = 0; i < positions.size(); ++i) {
    SourceSpec src;
    src.boundary_top_points.push_back({positions[i], 1.0});
    norms[i] = trace_l2_integral(generate(k_fixed, src));
  }
  // Threshold between the interior response and the plateau explosion: the
  // explosion bleeds a little into the support (the source width approaches
  // the bound gradually), so the floor also tracks the explosion amplitude.
  const double peak = *std::max_element(norms.begin(), norms.end());
  const double floor = std::max(kPeakFactor * median(norms), 0.25 * peak);
  std::vector<bool> marked(norms.size());
  for (size_t i = 0; i < norms.size(); ++i) marked[i] = norms[i] > floor;
  const bool left_cluster = marked.front();
  const bool right_cluster = marked.back();
  if (!left_cluster && !right_cluster)
    throw NumericError("calibrate_support: support not detected (sweep is flat)");
  if (left_cluster) {
    size_t i = 0;
    while (i + 1 < marked.size() && marked[i + 1]) ++i;
    return positions[i];  // inner edge of the left explosion cluster
  }
  size_t i = marked.size() - 1;
  while (i > 0 && marked[i - 1]) --i;
  return positions[i];
}

Interval calibrate_support(const TraceGenerator& generate, double k_thin, double k_thick,
                           const std::vector<double>& positions) {
  const double e1 = calibrate_support_edge(generate, k_thin, positions);
  const double e2 = calibrate_support_edge(generate, k_thick, positions);
  return {std::min(e1, e2), std::max(e1, e2)};
}

}  // namespace wg
