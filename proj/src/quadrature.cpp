#include "wg/quadrature.hpp"

#include <cmath>
#include <vector>

#include "wg/errors.hpp"

namespace wg {
namespace {

using Fn = std::function<double(double)>;

struct SimpsonState {
  const Fn* f;
  double abs_tol;
  long budget;
  long used = 0;
};

double simpson_recurse(SimpsonState& st, double a, double b, double fa, double fm,
                       double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = (*st.f)(lm), frm = (*st.f)(rm);
  const double h = b - a;
  const double left = h / 12.0 * (fa + 4.0 * flm + fm);
  const double right = h / 12.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth > 0 && std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  if (++st.used > st.budget)
    throw ConvergenceError("integrate: subdivision budget exhausted",
                           left + right);
  if (depth > 48) return left + right + delta / 15.0;  // step at rounding floor
  return simpson_recurse(st, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
         simpson_recurse(st, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

double adaptive_simpson(const Fn& f, double a, double b, const QuadratureRule& rule) {
  if (a == b) return 0.0;
  SimpsonState st{&f, rule.abs_tol, rule.max_subdivisions};
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_recurse(st, a, b, fa, fm, fb, whole, rule.abs_tol, 0);
}

// Gauss-Legendre nodes/weights on [-1, 1].
struct GaussTable {
  std::vector<double> x, w;
};

GaussTable gauss_table(int order) {
  switch (order) {
    case 2:
      return {{-0.5773502691896257, 0.5773502691896257}, {1.0, 1.0}};
    case 3:
      return {{-0.7745966692414834, 0.0, 0.7745966692414834},
              {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0}};
    case 4:
      return {{-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
               0.8611363115940526},
              {0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
               0.3478548451374538}};
    default:
      return {{-0.9061798459386640, -0.5384693101056831, 0.0,
               0.5384693101056831, 0.9061798459386640},
              {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
               0.4786286704993665, 0.2369268850561891}};
  }
}

double gauss_panels(const Fn& f, double a, double b, const GaussTable& t, long n) {
  const double h = (b - a) / static_cast<double>(n);
  double acc = 0.0;
  for (long i = 0; i < n; ++i) {
    const double c = a + (i + 0.5) * h;
    double panel = 0.0;
    for (size_t j = 0; j < t.x.size(); ++j) panel += t.w[j] * f(c + 0.5 * h * t.x[j]);
    acc += 0.5 * h * panel;
  }
  return acc;
}

double gauss_composite(const Fn& f, double a, double b, const QuadratureRule& rule) {
  if (a == b) return 0.0;
  const GaussTable t = gauss_table(std::min(std::max(rule.gauss_order, 2), 5));
  double prev = gauss_panels(f, a, b, t, 1);
  for (long n = 2; n <= rule.max_subdivisions; n *= 2) {
    const double cur = gauss_panels(f, a, b, t, n);
    if (std::abs(cur - prev) <= rule.abs_tol) return cur;
    prev = cur;
  }
  throw ConvergenceError("integrate: Gauss refinement budget exhausted", prev);
}

double dispatch(const Fn& f, double a, double b, const QuadratureRule& rule) {
  return rule.kind == QuadratureRule::Kind::adaptive_simpson
             ? adaptive_simpson(f, a, b, rule)
             : gauss_composite(f, a, b, rule);
}

// Integrate with a square-root-integrable singularity at `end` (sign +1 when
// the singular end is the left bound). Substituting u^2 = |x - end| makes the
// integrand 2u f(end +- u^2) bounded. Below u_eps the coordinate end -+ u^2
// is no longer representable distinctly from `end`, so that head is added
// analytically: the transformed integrand is constant there to O(u_eps^2).
double integrate_singular(const Fn& f, double end, double sign, double span,
                          const QuadratureRule& rule) {
  const double u_eps = std::sqrt(4.0 * 2.22e-16 * std::max(1.0, std::abs(end)));
  Fn g = [&f, end, sign](double u) { return 2.0 * u * f(end + sign * u * u); };
  const double u_max = std::sqrt(span);
  if (u_max <= u_eps) return g(u_max) * u_max;
  return dispatch(g, u_eps, u_max, rule) + g(u_eps) * u_eps;
}

}  // namespace

double integrate(const Fn& f, double a, double b, const QuadratureRule& rule) {
  if (!(a <= b)) throw ValidationError("integrate: requires a <= b");
  if (a == b) return 0.0;
  const bool bad_a = !std::isfinite(f(a));
  const bool bad_b = !std::isfinite(f(b));
  if (bad_a && bad_b) {
    const double m = 0.5 * (a + b);
    return integrate(f, a, m, rule) + integrate(f, m, b, rule);
  }
  if (bad_a) return integrate_singular(f, a, +1.0, b - a, rule);
  if (bad_b) return integrate_singular(f, b, -1.0, b - a, rule);
  return dispatch(f, a, b, rule);
}

}  // namespace wg
