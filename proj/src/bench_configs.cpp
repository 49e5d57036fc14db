#include "wg/bench_configs.hpp"

#include <cmath>
#include <numbers>

#include <algorithm>

#include "wg/errors.hpp"

namespace wg {

namespace {
constexpr double pi = std::numbers::pi;
}

BenchmarkCase benchmark_case(const std::string& id) {
  BenchmarkCase c;
  c.id = id;
  c.profile = builtin_profile(id);
  c.plan.mode = 1;
  c.plan.k_min = pi / c.profile.h_max;
  c.plan.k_max = pi / c.profile.h_min;
  c.options.r = 0.2;
  c.options.eta = c.profile.slope_scale;

  const Interval sup = c.profile.support;
  if (id == "h1") {
    c.plan.frequencies = linspace(30.92, 31.93, 20);
    c.source = benchmark_source({6.0});
    c.options.branches = {{{-8.0, 8.0}, 6.0}};
    c.reference_rel_error = 0.0049;
  } else if (id == "h2") {
    c.plan.frequencies = linspace(30.9, 31.95, 20);
    c.source = benchmark_source({6.0});
    c.options.branches = {{{-8.0, 8.0}, 6.0}};
    c.reference_rel_error = 0.0094;
  } else if (id == "h3") {
    c.plan.frequencies = linspace(31.01, 31.83, 20);
    c.source = benchmark_source({6.0});
    c.options.branches = {{{-8.0, 8.0}, 6.0}};
    c.reference_rel_error = 0.0040;
  } else if (id == "h4") {
    c.plan.frequencies = linspace(31.01, 31.83, 20);
    c.source = benchmark_source({6.0});
    c.options.branches = {{{-8.0, 8.0}, 6.0}};
    c.reference_rel_error = 0.016;
    c.tolerance_rel_error = 0.04;  // nonsmooth stress case
    c.options.eta = 8e-4;          // window on the interior slope scale
  } else if (id == "h5") {
    c.plan.frequencies = linspace(30.65, 31.4, 20);
    c.source = benchmark_source({0.0});
    c.options.branches = {{{-7.5, 0.0}, 0.0}, {{0.0, 7.5}, 0.0}};
    c.reference_rel_error = 0.0057;
    // Dilation: both plateaus sit at h_min, so both ends anchor at N pi / k_max.
    c.options.anchor_left_width = pi / c.plan.k_max;
    c.options.anchor_right_width = pi / c.plan.k_max;
  } else if (id == "h6") {
    c.plan.frequencies = linspace(31.42, 32.21, 20);
    c.source = benchmark_source({-6.0, 6.0});
    c.options.branches = {{{-6.0, -0.25}, -6.0}, {{-0.25, 6.0}, 6.0}};
    c.reference_rel_error = 0.0081;
    // Compression: both plateaus sit at h_max.
    c.options.anchor_left_width = pi / c.plan.k_min;
    c.options.anchor_right_width = pi / c.plan.k_min;
  } else if (id == "h7") {
    c.plan.frequencies = linspace(30.97, 31.43, 20);
    c.source = benchmark_source({-1.5, 6.0});
    c.options.branches = {{{-3.5, -1.5}, -1.5}, {{-1.5, 2.1}, -1.5}, {{2.1, 6.0}, 6.0}};
    c.reference_rel_error = 0.0097;
    // Plateaus of h7 differ from the global extrema; anchor at the calibrated
    // plateau widths instead of N pi / k_max, N pi / k_min.
    c.options.anchor_left_width = c.profile.h(sup.lo - 1.0);
    c.options.anchor_right_width = c.profile.h(sup.hi + 1.0);
  } else {
    throw ValidationError("benchmark_case: unknown id '" + id + "'");
  }
  return c;
}

std::vector<SurfaceTrace> simulate_case(const BenchmarkCase& c, double noise_amplitude,
                                        std::uint64_t seed, Exec exec) {
  std::vector<SurfaceTrace> traces;
  traces.reserve(c.plan.frequencies.size());
  const std::vector<double> xs = linspace(c.measured_span.lo, c.measured_span.hi, c.samples);
  SynthesisOptions opt;
  opt.exec = exec;
  opt.warn_source_side = false;
  for (size_t i = 0; i < c.plan.frequencies.size(); ++i) {
    SurfaceTrace t = synthesize_surface(c.profile, c.plan.frequencies[i], c.source, xs, opt);
    if (noise_amplitude > 0.0) t = add_noise(t, noise_amplitude, seed + i);
    traces.push_back(std::move(t));
  }
  return traces;
}

ReconstructionResult run_case(const BenchmarkCase& c, double noise_amplitude,
                              std::uint64_t seed, Exec exec) {
  const std::vector<SurfaceTrace> traces = simulate_case(c, noise_amplitude, seed, exec);
  ReconstructOptions opt = c.options;
  opt.exec = exec;
  return reconstruct_profile(c.plan, traces, c.profile.support, opt, &c.profile);
}

namespace {

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

}  // namespace

std::vector<NoiseSweepRow> noise_sweep_study(int seeds_per_level, Exec exec) {
  const AiryParams p0{cplx(2.0, 1.0), 1.4, -2.8};
  FitBox box;
  box.z_max = 10.0;
  box.alpha_min = 0.5;
  box.alpha_max = 3.0;
  box.beta_min = -6.0;
  box.beta_max = 2.0;

  SurfaceTrace t1, t2, t3;
  t1.x = linspace(-6.0, -1.0, 100);
  t2.x = linspace(-2.0, 6.0, 100);
  t3.x = linspace(-6.0, 6.0, 200);
  t1.d = model_eval(p0, t1.x);
  t2.d = model_eval(p0, t2.x);
  t3.d = model_eval(p0, t3.x);

  const int levels = 20;
  std::vector<NoiseSweepRow> rows(levels);
  struct Sample {
    double direct, ls1, ls2, ls3;
  };
  std::vector<Sample> samples(static_cast<size_t>(levels) * seeds_per_level);

  parallel_for(exec, static_cast<long>(samples.size()), [&](long idx) {
    const int li = static_cast<int>(idx) / seeds_per_level;
    const int si = static_cast<int>(idx) % seeds_per_level;
    const double level = 0.05 * (li + 1);
    const std::uint64_t seed = 1000 * static_cast<std::uint64_t>(li + 1) + si;
    auto lambda_err = [&](const SurfaceTrace& base) {
      const SurfaceTrace noisy = add_noise(base, level, seed);
      try {
        const FitReport rep = fit_least_squares(noisy, box);
        return std::abs(lambda_resonant_point(rep) + 2.0);
      } catch (const Error&) {
        return HUGE_VAL;  // a lost fit counts as an arbitrarily bad estimate
      }
    };
    Sample s;
    s.ls1 = lambda_err(t1);
    s.ls2 = lambda_err(t2);
    s.ls3 = lambda_err(t3);
    try {
      const AiryParams direct = direct_fit(add_noise(t3, level, seed));
      s.direct = std::abs(direct.beta / direct.alpha + 2.0);
    } catch (const Error&) {
      s.direct = HUGE_VAL;
    }
    samples[idx] = s;
  });

  for (int li = 0; li < levels; ++li) {
    std::vector<double> d, l1, l2, l3;
    for (int si = 0; si < seeds_per_level; ++si) {
      const Sample& s = samples[static_cast<size_t>(li) * seeds_per_level + si];
      d.push_back(s.direct);
      l1.push_back(s.ls1);
      l2.push_back(s.ls2);
      l3.push_back(s.ls3);
    }
    rows[li] = {0.05 * (li + 1), median_of(d), median_of(l1), median_of(l2), median_of(l3)};
  }
  return rows;
}

}  // namespace wg
