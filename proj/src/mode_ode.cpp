#include "wg/mode_ode.hpp"

#include <cmath>

#include "wg/errors.hpp"

namespace wg {

std::vector<cplx> tridiagonal_solve(std::vector<cplx> lower, std::vector<cplx> diag,
                                    std::vector<cplx> upper, std::vector<cplx> rhs) {
  const size_t n = diag.size();
  if (n == 0 || lower.size() != n - 1 || upper.size() != n - 1 || rhs.size() != n)
    throw ValidationError("tridiagonal_solve: inconsistent band sizes");
  for (size_t i = 1; i < n; ++i) {
    if (std::abs(diag[i - 1]) < 1e-300)
      throw NumericError("tridiagonal_solve: vanishing pivot");
    const cplx w = lower[i - 1] / diag[i - 1];
    diag[i] -= w * upper[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  if (std::abs(diag[n - 1]) < 1e-300)
    throw NumericError("tridiagonal_solve: vanishing pivot");
  std::vector<cplx> u(n);
  u[n - 1] = rhs[n - 1] / diag[n - 1];
  for (size_t i = n - 1; i-- > 0;) u[i] = (rhs[i] - upper[i] * u[i + 1]) / diag[i];
  return u;
}

SurfaceTrace mode_ode_oracle(const Profile& profile, double k, int n,
                             const SourceSpec& spec, Interval domain,
                             const ModeOdeOptions& options) {
  const double L = options.domain_half;
  if (domain.lo < -L || domain.hi > L || domain.lo >= domain.hi)
    throw ValidationError("mode_ode_oracle: domain must sit inside the solver box");
  if (options.grid_step > 1e-3 * 2.0 * L)
    throw ValidationError("mode_ode_oracle: grid_step too coarse (needs <= 1e-3 * length)");

  const long m = static_cast<long>(std::lround(2.0 * L / options.grid_step));
  const double dx = 2.0 * L / static_cast<double>(m);
  const long interior = m - 1;  // Dirichlet u = 0 at both ends

  ModeContext ctx = classify_mode(n, k, profile);

  auto stretch = [&](double x) -> cplx {  // gamma(x) = 1 + i alpha / k
    if (!options.with_pml || options.pml != PmlKind::complex_stretching) return 1.0;
    return {1.0, std::max(0.0, std::abs(x) - options.pml_start)};
  };

  std::vector<cplx> lower(interior - 1), upper(interior - 1);
  std::vector<cplx> diag(interior), rhs(interior, cplx(0.0, 0.0));
  for (long j = 0; j < interior; ++j) {
    const double x = -L + dx * static_cast<double>(j + 1);
    cplx keff2 = ctx.kn2(x);
    cplx gamma = 1.0;
    cplx a_minus = 1.0, a_plus = 1.0;
    if (options.with_pml && options.pml == PmlKind::additive_absorption) {
      const double ramp = std::max(0.0, std::abs(x) - options.pml_start);
      keff2 += cplx(0.0, k * ramp);
    } else if (options.with_pml) {
      // Conservative form of (1/gamma) d/dx ((1/gamma) du/dx) + k_n^2 u = -g,
      // multiplied through by gamma.
      gamma = stretch(x);
      a_minus = 1.0 / stretch(x - 0.5 * dx);
      a_plus = 1.0 / stretch(x + 0.5 * dx);
    }
    if (j > 0) lower[j - 1] = a_minus;
    if (j + 1 < interior) upper[j] = a_plus;
    diag[j] = -(a_minus + a_plus) + dx * dx * gamma * keff2;
  }

  // -g_n: continuous part sampled, Dirac terms as 1/dx loads at nearest nodes.
  // Sources sit outside the layers, so no gamma factor on the load.
  for (long j = 0; j < interior; ++j) {
    const double x = -L + dx * static_cast<double>(j + 1);
    const cplx g = reduced_source(spec, n, profile, x);
    if (g != cplx(0.0, 0.0)) rhs[j] -= dx * dx * stretch(x) * g;
  }
  for (const PointTerm& t : reduced_point_terms(spec, n, profile)) {
    const long j = static_cast<long>(std::lround((t.location + L) / dx)) - 1;
    if (j < 0 || j >= interior)
      throw ValidationError("mode_ode_oracle: point source outside solver box");
    rhs[j] -= dx * t.weight;  // dx^2 * (weight / dx)
  }

  const std::vector<cplx> u = tridiagonal_solve(std::move(lower), std::move(diag),
                                                std::move(upper), rhs);

  SurfaceTrace out;
  out.k = k;
  out.meta["generator"] = "mode-ode-fd";
  out.meta["mode"] = n;
  out.meta["grid_step"] = dx;
  for (long j = 0; j < interior; ++j) {
    const double x = -L + dx * static_cast<double>(j + 1);
    if (x >= domain.lo - 1e-12 && x <= domain.hi + 1e-12) {
      out.x.push_back(x);
      out.d.push_back(u[j]);
    }
  }
  return out;
}

}  // namespace wg
