#include "wg/source.hpp"

#include <cmath>
#include <numbers>

#include "wg/quadrature.hpp"

namespace wg {

namespace {
constexpr double pi = std::numbers::pi;
}

std::vector<double> SourceSpec::point_locations() const {
  std::vector<double> xs;
  for (const auto& t : interior_mode_points) xs.push_back(t.location);
  for (const auto& t : interior_shaped_points) xs.push_back(t.location);
  for (const auto& t : boundary_top_points) xs.push_back(t.location);
  for (const auto& t : boundary_bottom_points) xs.push_back(t.location);
  return xs;
}

bool SourceSpec::empty() const {
  return interior_mode_points.empty() && interior_shaped_points.empty() &&
         interior_modes.empty() && boundary_top_points.empty() &&
         boundary_bottom_points.empty() && boundary_top.empty() &&
         boundary_bottom.empty();
}

cplx reduced_source(const SourceSpec& spec, int n, const Profile& profile, double x) {
  const double h = profile.h(x);
  const double rsh = 1.0 / std::sqrt(h);
  cplx g = 0.0;
  for (const auto& t : spec.interior_modes)
    if (t.n == n && t.support.contains(x)) g += t.f(x) * rsh;
  if (!spec.boundary_top.empty()) {
    const double dh = profile.dh(x);
    const double metric = std::sqrt(1.0 + dh * dh);
    const double trace = mode_trace_top(n, profile, x);
    for (const auto& t : spec.boundary_top)
      if (t.support.contains(x)) g += trace * t.b(x) * metric;
  }
  if (!spec.boundary_bottom.empty()) {
    const double trace = mode_trace_bottom(n, profile, x);
    for (const auto& t : spec.boundary_bottom)
      if (t.support.contains(x)) g += trace * t.b(x);
  }
  return g;
}

std::vector<Interval> reduced_support(const SourceSpec& spec, int n) {
  std::vector<Interval> s;
  for (const auto& t : spec.interior_modes)
    if (t.n == n) s.push_back(t.support);
  for (const auto& t : spec.boundary_top) s.push_back(t.support);
  for (const auto& t : spec.boundary_bottom) s.push_back(t.support);
  return s;
}

namespace {

// Projection of a transverse shape F(y) onto mode n at width h:
// integral_0^h F(y) phi_n(y) dy.
cplx project_shape(const std::function<cplx(double)>& shape, int n, double h) {
  QuadratureRule rule;
  rule.abs_tol = 1e-12;
  auto real_part = [&](double y) {
    const double phi = n == 0 ? 1.0 / std::sqrt(h)
                              : std::sqrt(2.0 / h) * std::cos(n * pi * y / h);
    return shape(y).real() * phi;
  };
  auto imag_part = [&](double y) {
    const double phi = n == 0 ? 1.0 / std::sqrt(h)
                              : std::sqrt(2.0 / h) * std::cos(n * pi * y / h);
    return shape(y).imag() * phi;
  };
  return {integrate(real_part, 0.0, h, rule), integrate(imag_part, 0.0, h, rule)};
}

}  // namespace

std::vector<PointTerm> reduced_point_terms(const SourceSpec& spec, int n,
                                           const Profile& profile) {
  std::vector<PointTerm> terms;
  for (const auto& t : spec.interior_mode_points) {
    if (t.n != n) continue;
    const double h = profile.h(t.location);
    terms.push_back({t.location, t.weight / std::sqrt(h)});
  }
  for (const auto& t : spec.interior_shaped_points) {
    const double h = profile.h(t.location);
    const cplx fn = project_shape(t.shape, n, h);
    if (std::abs(fn) > 0.0) terms.push_back({t.location, fn / std::sqrt(h)});
  }
  for (const auto& t : spec.boundary_top_points) {
    const double dh = profile.dh(t.location);
    const double metric = std::sqrt(1.0 + dh * dh);
    terms.push_back({t.location, mode_trace_top(n, profile, t.location) * metric * t.weight});
  }
  for (const auto& t : spec.boundary_bottom_points) {
    terms.push_back({t.location, mode_trace_bottom(n, profile, t.location) * t.weight});
  }
  return terms;
}

SourceSpec benchmark_source(const std::vector<double>& positions) {
  SourceSpec spec;
  for (double s : positions) {
    spec.interior_shaped_points.push_back({s, [](double y) { return cplx(y, 0.0); }});
    spec.boundary_top_points.push_back({s, 1.0});
  }
  return spec;
}

}  // namespace wg
