#pragma once

#include <functional>

namespace wg {

struct QuadratureRule {
  enum class Kind { adaptive_simpson, gauss_legendre_composite };
  Kind kind = Kind::adaptive_simpson;
  double abs_tol = 1e-10;
  int max_subdivisions = 1 << 20;
  int gauss_order = 5;  // nodes per panel for the composite Gauss rule (2..5)
};

/// Integrate f over [a, b].
///
/// Endpoint square-root singularities (f non-finite at a or b but integrable,
/// (x-a)^(-1/2) type) are handled by the substitution u^2 = x - a.
/// Throws ValidationError if a > b, ConvergenceError (carrying the best
/// estimate) if the subdivision budget is exhausted.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureRule& rule = {});

}  // namespace wg
