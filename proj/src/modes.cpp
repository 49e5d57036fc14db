#include "wg/modes.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "wg/errors.hpp"

namespace wg {

namespace {
constexpr double pi = std::numbers::pi;
}

double mode_function(int n, const Profile& profile, double x, double y) {
  const double h = profile.h(x);
  if (y < 0.0 || y > h)
    throw ValidationError("mode_function: y outside [0, h(x)]");
  if (n == 0) return 1.0 / std::sqrt(h);
  return std::sqrt(2.0 / h) * std::cos(n * pi * y / h);
}

double mode_trace_bottom(int n, const Profile& profile, double x) {
  const double h = profile.h(x);
  return n == 0 ? 1.0 / std::sqrt(h) : std::sqrt(2.0 / h);
}

double mode_trace_top(int n, const Profile& profile, double x) {
  const double h = profile.h(x);
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  return n == 0 ? 1.0 / std::sqrt(h) : sign * std::sqrt(2.0 / h);
}

cplx local_wavenumber(int n, double k, const Profile& profile, double x) {
  if (k <= 0.0) throw ValidationError("local_wavenumber: k must be positive");
  const double h = profile.h(x);
  const double kn2 = k * k - n * n * pi * pi / (h * h);
  return kn2 >= 0.0 ? cplx(std::sqrt(kn2), 0.0) : cplx(0.0, std::sqrt(-kn2));
}

double delta_margin(double k, const Profile& profile, int n_max) {
  if (n_max < static_cast<int>(k * profile.h_max / pi))
    throw ValidationError("delta_margin: n_max below k h_max / pi");
  double best = HUGE_VAL;
  for (int n = 0; n <= n_max; ++n) {
    const double a = n * pi / profile.h_min;
    const double b = n * pi / profile.h_max;
    best = std::min(best, std::sqrt(std::abs(k * k - a * a)));
    best = std::min(best, std::sqrt(std::abs(k * k - b * b)));
  }
  return best;
}

double ModeContext::kn2(double x) const {
  const double h = profile.h(x);
  return k * k - n * n * pi * pi / (h * h);
}

double ModeContext::kn2_slope(double x) const {
  const double h = profile.h(x);
  return 2.0 * n * n * pi * pi * profile.dh(x) / (h * h * h);
}

int first_evanescent_mode(double k, const Profile& profile) {
  int n = 1;
  while (n * pi / k <= profile.h_max) ++n;
  return n;
}

ModeContext classify_mode(int n, double k, const Profile& profile) {
  if (n < 0) throw ValidationError("classify_mode: n must be >= 0");
  if (k <= 0.0) throw ValidationError("classify_mode: k must be positive");
  // Forbidden-frequency guard over every mode index that could bind.
  const int n_top = first_evanescent_mode(k, profile) + 1;
  for (int m = 1; m <= n_top; ++m) {
    if (std::abs(k - m * pi / profile.h_min) <= kForbiddenTol ||
        std::abs(k - m * pi / profile.h_max) <= kForbiddenTol) {
      const double d = delta_margin(k, profile, n_top);
      throw ForbiddenFrequencyError(
          "classify_mode: k = " + std::to_string(k) +
              " is a forbidden frequency (delta = " + std::to_string(d) + ")",
          d);
    }
  }

  ModeContext ctx;
  ctx.n = n;
  ctx.k = k;
  ctx.profile = profile;
  if (n == 0) {
    ctx.kind = ModeKind::propagative;
    return ctx;
  }
  const double w = n * pi / k;  // resonant width
  if (w < profile.h_min) {
    ctx.kind = ModeKind::propagative;
    return ctx;
  }
  if (w > profile.h_max) {
    ctx.kind = ModeKind::evanescent;
    return ctx;
  }
  ctx.kind = ModeKind::locally_resonant;

  // Sign-change scan of h(x) - w over the support, bisection refinement.
  const int grid = 2048;
  const double lo = profile.support.lo, hi = profile.support.hi;
  double xp = lo, fp = profile.h(xp) - w;
  for (int i = 1; i <= grid; ++i) {
    const double xc = lo + (hi - lo) * i / grid;
    const double fc = profile.h(xc) - w;
    if (fc == 0.0 || (fc < 0.0) != (fp < 0.0)) {
      double a = xp, b = xc, fa = fp;
      for (int it = 0; it < 100 && b - a > 1e-13; ++it) {
        const double m = 0.5 * (a + b);
        const double fm = profile.h(m) - w;
        if ((fm < 0.0) == (fa < 0.0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      const double xs = 0.5 * (a + b);
      ctx.resonant_points.push_back(xs);
      ctx.simple.push_back(std::abs(profile.dh(xs)) > kSimpleTol);
    }
    xp = xc;
    fp = fc;
  }
  return ctx;
}

}  // namespace wg
