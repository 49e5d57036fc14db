#pragma once

#include <complex>
#include <vector>

#include "wg/profile.hpp"

namespace wg {

using cplx = std::complex<double>;

enum class ModeKind { propagative, evanescent, locally_resonant };

/// Transverse basis function phi_n(x, y) of the local cross-section
/// (1/sqrt(h) for n = 0, sqrt(2/h) cos(n pi y / h) for n >= 1).
double mode_function(int n, const Profile& profile, double x, double y);

/// Trace values of phi_n at the bottom (y = 0) and top (y = h(x)) walls.
double mode_trace_bottom(int n, const Profile& profile, double x);
double mode_trace_top(int n, const Profile& profile, double x);

/// Local wavenumber k_n(x), k_n^2 = k^2 - n^2 pi^2 / h(x)^2, branch with
/// Re >= 0 and Im >= 0 (real or purely imaginary).
cplx local_wavenumber(int n, double k, const Profile& profile, double x);

/// min over n <= n_max of sqrt|k^2 - (n pi / h_min)^2|, sqrt|... h_max ...|.
double delta_margin(double k, const Profile& profile, int n_max);

/// A mode bound to a frequency and profile, with its classification and the
/// resonant points h(x*) = n pi / k inside supp(h').
struct ModeContext {
  int n = 0;
  double k = 0.0;
  Profile profile;
  ModeKind kind = ModeKind::propagative;
  std::vector<double> resonant_points;
  std::vector<bool> simple;  // |h'(x*)| > tol_simple per point

  double kn2(double x) const;
  cplx kn(double x) const { return local_wavenumber(n, k, profile, x); }
  /// d(k_n^2)/dx at x (= 2 n^2 pi^2 h' / h^3), the turning-point slope.
  double kn2_slope(double x) const;
};

inline constexpr double kForbiddenTol = 1e-8;
inline constexpr double kSimpleTol = 1e-6;

/// Classify mode n at frequency k. Throws ForbiddenFrequencyError when k is
/// within kForbiddenTol of n pi / h_min or n pi / h_max for any mode index
/// up to the first evanescent one.
ModeContext classify_mode(int n, double k, const Profile& profile);

/// Smallest index that is evanescent everywhere (n pi / k > h_max).
int first_evanescent_mode(double k, const Profile& profile);

}  // namespace wg
