#include "wg/forward.hpp"

#include <cmath>
#include <iostream>
#include <numbers>

#include "wg/airy.hpp"
#include "wg/errors.hpp"
#include "wg/quadrature.hpp"

namespace wg {

namespace {
constexpr double pi = std::numbers::pi;
const cplx kI(0.0, 1.0);
}  // namespace

TurningPointMap::TurningPointMap(const ModeContext& ctx, double x_star)
    : ctx_(&ctx), x_star_(x_star), slope_(ctx.kn2_slope(x_star)) {
  if (ctx.kind != ModeKind::locally_resonant)
    throw ValidationError("TurningPointMap: mode is not locally resonant");
}

namespace {

// Phase-style integrals need relative accuracy; an absolute target below the
// roundoff floor of an O(10) integral would only exhaust the subdivision
// budget. A failed refinement still carries a best estimate accurate far
// beyond the modal-kernel error, so use it.
double integrate_phase(const std::function<double(double)>& f, double a, double b) {
  QuadratureRule coarse;
  coarse.kind = QuadratureRule::Kind::gauss_legendre_composite;
  coarse.abs_tol = 1e-3;
  double scale = 1.0;
  try {
    scale = std::abs(integrate(f, a, b, coarse)) + 1.0;
  } catch (const ConvergenceError& e) {
    scale = std::abs(e.best_estimate) + 1.0;
  }
  QuadratureRule rule;
  rule.abs_tol = 1e-11 * scale;
  try {
    return integrate(f, a, b, rule);
  } catch (const ConvergenceError& e) {
    return e.best_estimate;
  }
}

}  // namespace

double TurningPointMap::operator()(double x) const {
  if (x == x_star_) return 0.0;
  const double span = std::abs(x - x_star_);
  const double dir = x > x_star_ ? 1.0 : -1.0;
  // integral of |k_N| between x* and x, with t = x* + dir * u^2.
  auto g = [this, dir](double u) {
    const double kn2 = ctx_->kn2(x_star_ + dir * u * u);
    return 2.0 * u * std::sqrt(std::abs(kn2));
  };
  const double phase = integrate_phase(g, 0.0, std::sqrt(span));
  const double mag = std::pow(1.5 * phase, 2.0 / 3.0);
  // Sign: positive where the mode is cut off (k_N^2 < 0), negative where it
  // oscillates. The local side is decided by the turning-point slope.
  const bool oscillatory = dir * slope_ > 0.0;
  return oscillatory ? -mag : mag;
}

double xi_map(const ModeContext& ctx, double x_star, double x) {
  return TurningPointMap(ctx, x_star)(x);
}

namespace {

double phase_integral(const ModeContext& ctx, double a, double b, bool imaginary_part) {
  auto f = [&ctx, imaginary_part](double t) {
    const double kn2 = ctx.kn2(t);
    if (imaginary_part) return kn2 < 0.0 ? std::sqrt(-kn2) : 0.0;
    return kn2 > 0.0 ? std::sqrt(kn2) : 0.0;
  };
  return integrate_phase(f, std::min(a, b), std::max(a, b));
}

// Langer amplitude |xi(x)|^(1/4) / sqrt(|k_N(x)|) with its finite limit
// |d(k_N^2)/dx(x*)|^(-1/6) at the turning point.
double langer_amplitude(const TurningPointMap& xi, const ModeContext& ctx, double x,
                        double xi_x) {
  const double kn2 = ctx.kn2(x);
  const double c = std::abs(xi.slope());
  if (std::abs(x - xi.x_star()) < 1e-7 || std::abs(kn2) < 1e-12)
    return std::pow(std::max(c, 1e-300), -1.0 / 6.0);
  return std::pow(std::abs(xi_x), 0.25) / std::sqrt(std::sqrt(std::abs(kn2)));
}

cplx resonant_kernel(const ModeContext& ctx, const TurningPointMap& xi, double x, double s) {
  const double xi_x = xi(x);
  const double xi_s = xi(s);
  const double amp = pi * langer_amplitude(xi, ctx, x, xi_x) *
                     langer_amplitude(xi, ctx, s, xi_s);
  // Ai at the argument farther into the cut-off region, (i Ai + Bi) at the
  // one farther into the oscillatory region; either assignment at x = s.
  const double xi_hi = std::max(xi_x, xi_s);
  const double xi_lo = std::min(xi_x, xi_s);
  const AiryValue a_hi = airy(xi_hi);
  const AiryValue a_lo = airy(xi_lo);
  return amp * a_hi.ai * (kI * a_lo.ai + a_lo.bi);
}

// Resonant point designated for a pair of positions: the one nearest to
// either of them (symmetric in x and s, so G(x, s) = G(s, x) holds). The
// kernel is trusted on the single-turning-point window around that point.
std::optional<double> designated_point(const ModeContext& ctx, double x, double s) {
  std::optional<double> best;
  double best_d = HUGE_VAL;
  for (double r : ctx.resonant_points) {
    const double d = std::min(std::abs(r - x), std::abs(r - s));
    if (d < best_d) {
      best_d = d;
      best = r;
    }
  }
  return best;
}

}  // namespace

cplx green_kernel(const ModeContext& ctx, double x, double s) {
  switch (ctx.kind) {
    case ModeKind::propagative: {
      const double kx = std::sqrt(ctx.kn2(x));
      const double ks = std::sqrt(ctx.kn2(s));
      if (kx == 0.0 || ks == 0.0)
        throw NumericError("green_kernel: k_n vanishes on a propagative branch");
      const double phase = phase_integral(ctx, s, x, false);
      return kI / (2.0 * std::sqrt(kx * ks)) * std::exp(kI * phase);
    }
    case ModeKind::evanescent: {
      const double mx = std::sqrt(-ctx.kn2(x));
      const double ms = std::sqrt(-ctx.kn2(s));
      if (mx == 0.0 || ms == 0.0)
        throw NumericError("green_kernel: k_n vanishes on an evanescent branch");
      const double decay = phase_integral(ctx, s, x, true);
      return std::exp(-decay) / (2.0 * std::sqrt(mx * ms));
    }
    case ModeKind::locally_resonant: {
      const std::optional<double> xs = designated_point(ctx, x, s);
      if (!xs) {
        // No turning point between the pair: the mode behaves locally like its
        // sign of k_N^2 dictates on that segment.
        const double kn2_mid = ctx.kn2(0.5 * (x + s));
        ModeContext local = ctx;
        local.kind = kn2_mid >= 0.0 ? ModeKind::propagative : ModeKind::evanescent;
        return green_kernel(local, x, s);
      }
      const TurningPointMap xi(ctx, *xs);
      return resonant_kernel(ctx, xi, x, s);
    }
  }
  throw NumericError("green_kernel: unreachable");
}

namespace {

// Sum of kernel-weighted point terms plus quadrature over the continuous part.
cplx mode_coefficient(const ModeContext& ctx, const SourceSpec& spec,
                      const std::vector<PointTerm>& points, double x) {
  cplx u = 0.0;
  for (const auto& t : points) u += green_kernel(ctx, x, t.location) * t.weight;
  for (const Interval& sup : reduced_support(spec, ctx.n)) {
    QuadratureRule rule;
    rule.abs_tol = 1e-9;
    auto re = [&](double s) {
      return (green_kernel(ctx, x, s) * reduced_source(spec, ctx.n, ctx.profile, s)).real();
    };
    auto im = [&](double s) {
      return (green_kernel(ctx, x, s) * reduced_source(spec, ctx.n, ctx.profile, s)).imag();
    };
    u += cplx(integrate(re, sup.lo, sup.hi, rule), integrate(im, sup.lo, sup.hi, rule));
  }
  return u;
}

void warn_resonant_source_side(const ModeContext& ctx, const std::vector<PointTerm>& points) {
  for (const auto& t : points) {
    const std::optional<double> xs = [&]() -> std::optional<double> {
      std::optional<double> best;
      for (double r : ctx.resonant_points)
        if (!best || std::abs(r - t.location) < std::abs(*best - t.location)) best = r;
      return best;
    }();
    if (xs && ctx.profile.h(t.location) <= ctx.profile.h(*xs)) {
      std::cerr << "warning: source at x = " << t.location
                << " sits where h(s) <= h(x*) for resonant mode n = " << ctx.n
                << "; the locally resonant part will be weak\n";
    }
  }
}

}  // namespace

std::vector<cplx> synthesize_mode(const ModeContext& ctx, const SourceSpec& spec,
                                  const std::vector<double>& abscissae, Exec exec) {
  const std::vector<PointTerm> points = reduced_point_terms(spec, ctx.n, ctx.profile);
  std::vector<cplx> u(abscissae.size());
  parallel_for(exec, static_cast<long>(abscissae.size()),
               [&](long i) { u[i] = mode_coefficient(ctx, spec, points, abscissae[i]); });
  return u;
}

SurfaceTrace synthesize_surface(const Profile& profile, double k, const SourceSpec& spec,
                                const std::vector<double>& abscissae,
                                const SynthesisOptions& options) {
  if (abscissae.empty()) throw ValidationError("synthesize_surface: no abscissae");
  if (spec.empty()) throw ValidationError("synthesize_surface: empty source spec");
  int n_max = options.n_max;
  if (n_max < 0) n_max = first_evanescent_mode(k, profile) + 2;

  SurfaceTrace trace;
  trace.x = abscissae;
  trace.d.assign(abscissae.size(), cplx(0.0, 0.0));
  trace.k = k;

  for (int n = 0; n <= n_max; ++n) {
    const ModeContext ctx = classify_mode(n, k, profile);
    const std::vector<PointTerm> points = reduced_point_terms(spec, n, profile);
    if (points.empty() && reduced_support(spec, n).empty()) continue;
    if (options.warn_source_side && ctx.kind == ModeKind::locally_resonant)
      warn_resonant_source_side(ctx, points);
    const std::vector<cplx> u = synthesize_mode(ctx, spec, abscissae, options.exec);
    for (size_t i = 0; i < abscissae.size(); ++i)
      trace.d[i] += u[i] * mode_trace_bottom(n, profile, abscissae[i]);
  }
  trace.meta["generator"] = "modal-kernel-synthesis";
  trace.meta["n_max"] = n_max;
  trace.meta["profile"] = profile.name;
  return trace;
}

}  // namespace wg
