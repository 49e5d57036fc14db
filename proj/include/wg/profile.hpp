#pragma once

#include <functional>
#include <string>
#include <vector>

namespace wg {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
  bool contains(double x) const { return x >= lo && x <= hi; }
};

/// Width profile of a slowly varying waveguide: h with analytic derivatives,
/// bounds, supp(h') and the slow-variation scales.
///
/// `eta` witnesses both derivative bounds (sup|h'| < eta, sup|h''| < eta^2);
/// `slope_scale` is 1.1 * sup|h'| and is the scale used for measurement-window
/// radii R = r * eta^(-1/3). For nonsmooth profiles both are measured outside
/// `excluded` notches around derivative blow-ups.
struct Profile {
  std::string name;
  std::function<double(double)> h;
  std::function<double(double)> dh;
  std::function<double(double)> d2h;
  double h_min = 0.0;
  double h_max = 0.0;
  Interval support;
  double eta = 0.0;
  double slope_scale = 0.0;
  double sup_slope = 0.0;      // measured sup|h'|
  double sup_curvature = 0.0;  // measured sup|h''|
  bool nonsmooth = false;
  std::vector<Interval> excluded;

  bool excluded_at(double x) const {
    for (const auto& e : excluded)
      if (e.contains(x)) return true;
    return false;
  }
};

/// Measure sup|h'|, sup|h''| outside excluded notches and fill eta/slope_scale.
void measure_variation(Profile& p, int samples = 20001);

/// The seven bundled benchmark profiles, ids "h1".."h7".
Profile builtin_profile(const std::string& id);

/// Linear ramp through (0, base) with the given slope, clipped to
/// [base - slope*half_width, base + slope*half_width]; supp(h') = [-hw, hw].
Profile ramp_profile(double slope, double half_width = 4.0, double base = 0.1);

/// Ramp with slope `slope` between fixed levels h_lo < h_hi, centred so that
/// h(0) = (h_lo + h_hi)/2; used for the turning-point steepness studies.
Profile ramp_between(double slope, double h_lo, double h_hi);

/// JSON import/export. Accepted forms: {"id": "h3"} or a sampled table
/// {"x": [...], "h": [...]} (strictly increasing x) interpolated with a
/// monotone cubic; optional "support": [a, b].
Profile profile_from_json(const std::string& json_text);
std::string profile_to_json(const Profile& p, int table_samples = 0);

/// C1 monotonicity-preserving cubic through (x_i, y_i) (Fritsch-Carlson).
struct MonotoneCubic {
  std::vector<double> x, y, m;  // nodes, values, node slopes
  double operator()(double t) const;
  double derivative(double t) const;
  double second_derivative(double t) const;
};
MonotoneCubic make_monotone_cubic(std::vector<double> x, std::vector<double> y);

}  // namespace wg
