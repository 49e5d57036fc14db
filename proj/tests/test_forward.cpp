#include <cmath>
#include <numbers>

#include "doctest.h"
#include "wg/errors.hpp"
#include "wg/forward.hpp"
#include "wg/mode_ode.hpp"

using namespace wg;

namespace {
constexpr double pi = std::numbers::pi;

Profile near_flat() { return ramp_profile(1e-9, 4.0, 0.1); }

}  // namespace

TEST_SUITE("forward") {

TEST_CASE("xi: sign convention and zero at the turning point") {
  const Profile p = builtin_profile("h3");
  const double k = 31.4;
  const ModeContext ctx = classify_mode(1, k, p);
  REQUIRE(ctx.kind == ModeKind::locally_resonant);
  const double xs = ctx.resonant_points[0];
  const TurningPointMap xi(ctx, xs);
  CHECK(xi(xs) == 0.0);
  CHECK(xi(xs + 0.5) < 0.0);  // oscillatory side (h increasing, source side)
  CHECK(xi(xs - 0.5) > 0.0);  // cut-off side
  double prev = xi(xs - 1.0);
  for (double x = xs - 0.8; x < xs + 1.0; x += 0.2) {
    const double cur = xi(x);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("xi matches the closed form on a linear ramp") {
  // k_N^2(x) ~ c (x - x*) with c = 2 pi^2 h'(x*) / h(x*)^3, so
  // xi(x) ~ -c^(1/3) (x - x*) near the turning point.
  const Profile p = builtin_profile("h3");
  const double k = 31.4;
  const ModeContext ctx = classify_mode(1, k, p);
  const double xs = ctx.resonant_points[0];
  const TurningPointMap xi(ctx, xs);
  const double h = p.h(xs);
  const double alpha = std::cbrt(2.0 * pi * pi * p.dh(xs) / (h * h * h));
  CHECK(xi.slope() == doctest::Approx(alpha * alpha * alpha).epsilon(1e-9));
  for (double dx : {-0.2, -0.05, 0.05, 0.2})
    CHECK(xi(xs + dx) == doctest::Approx(-alpha * dx).epsilon(5e-3));
}

TEST_CASE("kernel symmetric under exchange of x and s") {
  const Profile p = builtin_profile("h3");
  for (double k : {30.6, 31.4, 32.3}) {
    const ModeContext ctx = classify_mode(1, k, p);
    for (auto [x, s] : {std::pair{-2.0, 3.0}, {0.5, 2.5}, {-3.0, -1.0}}) {
      const cplx a = green_kernel(ctx, x, s);
      const cplx b = green_kernel(ctx, s, x);
      CHECK(std::abs(a - b) <= 1e-12 * std::abs(a));
    }
  }
}

TEST_CASE("flat propagative kernel: constant modulus, linear phase") {
  const Profile p = near_flat();
  const ModeContext ctx = classify_mode(1, 32.5, p);
  REQUIRE(ctx.kind == ModeKind::propagative);
  const double kn = std::abs(ctx.kn(0.0));
  const double s = 2.0;
  double prev_phase = 0.0;
  for (int i = 0; i < 40; ++i) {
    const double x = -3.0 + 0.1 * i;
    const cplx g = green_kernel(ctx, x, s);
    CHECK(std::abs(g) == doctest::Approx(1.0 / (2.0 * kn)).epsilon(1e-6));
    if (i > 0) {
      double dphi = std::arg(g) - prev_phase;
      while (dphi > pi) dphi -= 2.0 * pi;
      while (dphi < -pi) dphi += 2.0 * pi;
      CHECK(std::abs(dphi) == doctest::Approx(kn * 0.1).epsilon(1e-6));
    }
    prev_phase = std::arg(g);
  }
}

TEST_CASE("evanescent kernel decays monotonically and matches the analytic form") {
  const Profile p = near_flat();
  const ModeContext ctx = classify_mode(1, 30.0, p);
  REQUIRE(ctx.kind == ModeKind::evanescent);
  const double mu = ctx.kn(0.0).imag();
  double prev = HUGE_VAL;
  for (double d = 0.0; d <= 2.0; d += 0.1) {
    const cplx g = green_kernel(ctx, d, 0.0);
    CHECK(std::abs(g) == doctest::Approx(std::exp(-mu * d) / (2.0 * mu)).epsilon(1e-9));
    CHECK(std::abs(g) < prev);
    prev = std::abs(g) * (1.0 + 1e-12);
  }
}

TEST_CASE("resonant kernel continuous at x = s") {
  const Profile p = builtin_profile("h3");
  const ModeContext ctx = classify_mode(1, 31.4, p);
  const double s = 2.5;
  const cplx left = green_kernel(ctx, std::nextafter(s, 0.0), s);
  const cplx right = green_kernel(ctx, std::nextafter(s, 10.0), s);
  CHECK(std::abs(left - right) < 1e-9 * std::abs(left));
}

TEST_CASE("single resonant point source collapses to a kernel evaluation") {
  const Profile p = builtin_profile("h3");
  const double k = 31.4;
  SourceSpec spec;
  spec.interior_mode_points.push_back({1, 6.0, 1.0});
  const std::vector<double> xs = {-1.0, 0.5, 2.0};
  const SurfaceTrace t = synthesize_surface(p, k, spec, xs, {.n_max = 3, .exec = Exec::serial,
                                                             .warn_source_side = false});
  const ModeContext ctx = classify_mode(1, k, p);
  for (size_t i = 0; i < xs.size(); ++i) {
    const cplx expected = green_kernel(ctx, xs[i], 6.0) / std::sqrt(p.h(6.0)) *
                          mode_trace_bottom(1, p, xs[i]);
    CHECK(std::abs(t.d[i] - expected) < 1e-12 * std::abs(expected));
  }
}

TEST_CASE("h4 benchmarks: evanescent decay at 30.9, Airy shape at 31.1") {
  const Profile p = builtin_profile("h4");
  SourceSpec spec;
  spec.interior_mode_points.push_back({1, 6.0, 1.0});
  const std::vector<double> xs = linspace(-7.0, 7.0, 400);

  // k = 30.9: mode 1 evanescent, amplitude decays away from the source at 6.
  {
    const SurfaceTrace t = synthesize_surface(p, 30.9, spec, xs,
                                              {.n_max = 1, .exec = Exec::serial,
                                               .warn_source_side = false});
    REQUIRE(classify_mode(1, 30.9, p).kind == ModeKind::evanescent);
    for (size_t i = 40; i + 1 < t.size(); i += 20) {
      if (t.x[i + 1] < 5.5) CHECK(std::abs(t.d[i]) < std::abs(t.d[i + 1]));
      if (t.x[i] > 6.5) CHECK(std::abs(t.d[i]) > std::abs(t.d[i + 1]));
    }
  }

  // k = 31.1: locally resonant; oscillation between x* and the source,
  // decay on the far side of the turning point.
  {
    REQUIRE(classify_mode(1, 31.1, p).kind == ModeKind::locally_resonant);
    const double x_star = classify_mode(1, 31.1, p).resonant_points[0];
    const SurfaceTrace t = synthesize_surface(p, 31.1, spec, xs,
                                              {.n_max = 1, .exec = Exec::serial,
                                               .warn_source_side = false});
    // Count sign changes of the real part on each side of x*.
    int osc_right = 0, osc_left = 0;
    for (size_t i = 1; i < t.size(); ++i) {
      const bool flip = (t.d[i].real() < 0) != (t.d[i - 1].real() < 0);
      if (t.x[i] > x_star + 0.3 && t.x[i] < 5.5 && flip) ++osc_right;
      if (t.x[i] < x_star - 0.3 && flip) ++osc_left;
    }
    CHECK(osc_right >= 2);
    CHECK(osc_left <= 1);
    // Decay beyond the turning point.
    double amp_near = 0.0, amp_far = 0.0;
    for (size_t i = 0; i < t.size(); ++i) {
      if (std::abs(t.x[i] - (x_star - 1.0)) < 0.5)
        amp_near = std::max(amp_near, std::abs(t.d[i]));
      if (t.x[i] < x_star - 3.0) amp_far = std::max(amp_far, std::abs(t.d[i]));
    }
    CHECK(amp_far < 0.5 * amp_near);
  }
}

namespace {

// Self-similar C2 quintic step family: fixed amplitude 1e-3, width scaled so
// sup|h'| = slope, hence sup|h''| ~ slope^2 as the slow-variation assumption
// requires. Shape p(u) = (3u^5 - 10u^3 + 15u)/8 on [-1, 1], C2 junctions.
Profile smooth_step(double slope) {
  Profile p;
  p.name = "smooth_step";
  const double amp = 1e-3;
  const double w = 1.875 * amp / slope;  // p'(0) = 15/8
  auto shape = [](double u) { return (3.0 * std::pow(u, 5) - 10.0 * u * u * u + 15.0 * u) / 8.0; };
  p.h = [amp, w, shape](double x) {
    if (x < -w) return 0.1 - amp;
    if (x > w) return 0.1 + amp;
    return 0.1 + amp * shape(x / w);
  };
  p.dh = [amp, w](double x) {
    if (x < -w || x > w) return 0.0;
    const double u = x / w;
    const double t = u * u - 1.0;
    return amp / w * 15.0 * t * t / 8.0;
  };
  p.d2h = [amp, w](double x) {
    if (x < -w || x > w) return 0.0;
    const double u = x / w;
    return amp / (w * w) * 15.0 * u * (u * u - 1.0) / 2.0;
  };
  p.h_min = 0.1 - amp;
  p.h_max = 0.1 + amp;
  p.support = {-w, w};
  measure_variation(p);
  return p;
}

}  // namespace

TEST_CASE("kernel/oracle discrepancy shrinks as the variation slows") {
  // Three slopes halving down; single-mode synthesis against the finite
  // difference oracle, relative sup-norm on a branch-appropriate window.
  const double etas[3] = {1.6e-3, 8e-4, 4e-4};
  ModeOdeOptions ode;
  ode.grid_step = 2.5e-4;

  auto discrepancy = [&](double eta, double k, double source, Interval window) {
    const Profile p = smooth_step(eta / 1.1);
    SourceSpec spec;
    spec.interior_mode_points.push_back({1, source, 1.0});
    const ModeContext ctx = classify_mode(1, k, p);
    const SurfaceTrace oracle = mode_ode_oracle(p, k, 1, spec, window, ode);
    const std::vector<cplx> synth = synthesize_mode(ctx, spec, oracle.x, Exec::parallel);
    double sup_diff = 0.0, sup_ref = 0.0;
    for (size_t i = 0; i < oracle.size(); ++i) {
      sup_diff = std::max(sup_diff, std::abs(synth[i] - oracle.d[i]));
      sup_ref = std::max(sup_ref, std::abs(oracle.d[i]));
    }
    return sup_diff / sup_ref;
  };

  SUBCASE("propagative") {
    double prev = HUGE_VAL;
    for (double eta : etas) {
      const double cur = discrepancy(eta, 34.0, 6.0, {-6.0, 5.0});
      CHECK(cur < prev);
      prev = cur;
    }
    CHECK(prev < 0.05);
  }
  SUBCASE("evanescent") {
    // Source mid-slope so the measured window actually sees the variation.
    double prev = HUGE_VAL;
    for (double eta : etas) {
      const double cur = discrepancy(eta, 29.0, 0.0, {0.25, 2.0});
      CHECK(cur < prev);
      prev = cur;
    }
    CHECK(prev < 0.05);
  }
  SUBCASE("locally resonant") {
    double prev = HUGE_VAL;
    for (double eta : etas) {
      const double cur = discrepancy(eta, pi / 0.1, 6.0, {-5.0, 5.0});
      CHECK(cur < prev);
      prev = cur;
    }
    CHECK(prev < 0.05);
  }
}

TEST_CASE("empty sources rejected") {
  const Profile p = builtin_profile("h3");
  CHECK_THROWS_AS(synthesize_surface(p, 31.4, SourceSpec{}, {0.0, 1.0}), ValidationError);
}

}  // TEST_SUITE
