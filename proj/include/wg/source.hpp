#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "wg/modes.hpp"
#include "wg/profile.hpp"

namespace wg {

/// One Dirac term: weight * delta_{x = location}.
struct PointTerm {
  double location = 0.0;
  cplx weight = 1.0;
};

/// Interior modal point source: f(x, y) = weight * delta_{x = location} * phi_n(x, y).
struct ModalPointTerm {
  int n = 0;
  double location = 0.0;
  cplx weight = 1.0;
};

/// Interior point source with an explicit transverse shape F(y):
/// f(x, y) = delta_{x = location} * F(y); projected onto each mode at h(location).
struct ShapedPointTerm {
  double location = 0.0;
  std::function<cplx(double)> shape;  // F(y)
};

/// Compactly supported modal line source f_n(x).
struct ModalFunctionTerm {
  int n = 0;
  std::function<cplx(double)> f;
  Interval support;
};

/// Compactly supported boundary source b(x).
struct BoundaryFunctionTerm {
  std::function<cplx(double)> b;
  Interval support;
};

/// Interior + boundary sources of the forward problem. Dirac terms stay
/// symbolic so downstream integrals collapse to kernel evaluations.
struct SourceSpec {
  std::vector<ModalPointTerm> interior_mode_points;
  std::vector<ShapedPointTerm> interior_shaped_points;
  std::vector<ModalFunctionTerm> interior_modes;
  std::vector<PointTerm> boundary_top_points;
  std::vector<PointTerm> boundary_bottom_points;
  std::vector<BoundaryFunctionTerm> boundary_top;
  std::vector<BoundaryFunctionTerm> boundary_bottom;

  /// Positions of all Dirac terms (used for window/branch bookkeeping).
  std::vector<double> point_locations() const;
  bool empty() const;
};

/// Continuous part of the reduced modal source
///   g_n(x) = f_n(x)/sqrt(h) + phi_n|top * b_top(x) * sqrt(1 + h'^2)
///          + phi_n|bottom * b_bot(x).
cplx reduced_source(const SourceSpec& spec, int n, const Profile& profile, double x);

/// Union of the declared supports of the continuous source terms for mode n
/// (empty when the spec is Dirac-only).
std::vector<Interval> reduced_support(const SourceSpec& spec, int n);

/// Dirac terms of g_n as symbolic (location, weight) pairs.
std::vector<PointTerm> reduced_point_terms(const SourceSpec& spec, int n,
                                           const Profile& profile);

/// Sources used by the bundled benchmarks: f(x,y) = y * delta_{x=s} plus
/// b_top = delta_{x=s} at each position.
SourceSpec benchmark_source(const std::vector<double>& positions);

}  // namespace wg
