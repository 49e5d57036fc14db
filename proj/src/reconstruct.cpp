#include "wg/reconstruct.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include "json.hpp"
#include "wg/errors.hpp"

namespace wg {

namespace {
constexpr double pi = std::numbers::pi;
}

void FrequencyPlan::validate() const {
  if (mode < 1) throw ValidationError("plan: mode must be >= 1");
  if (!(k_min < k_max)) throw ValidationError("plan: k_min must be < k_max");
  if (frequencies.empty()) throw ValidationError("plan: no frequencies");
  for (size_t i = 0; i < frequencies.size(); ++i) {
    if (frequencies[i] <= k_min || frequencies[i] >= k_max)
      throw ValidationError("plan: frequency outside (k_min, k_max)");
    if (i > 0 && frequencies[i] <= frequencies[i - 1])
      throw ValidationError("plan: frequencies must be strictly increasing");
  }
}

std::vector<double> parse_frequency_grid(const std::string& text) {
  const size_t c1 = text.find(':');
  const size_t c2 = text.find(':', c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw ValidationError("frequency grid: expected \"a:b:l\"");
  auto num = [&](size_t from, size_t to) {
    double v = 0.0;
    const char* begin = text.data() + from;
    const char* end = text.data() + to;
    auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc() || res.ptr != end)
      throw ValidationError("frequency grid: bad number in \"" + text + "\"");
    return v;
  };
  const double a = num(0, c1);
  const double b = num(c1 + 1, c2);
  const double l = num(c2 + 1, text.size());
  const int count = static_cast<int>(std::lround(l));
  if (count < 2 || b <= a) throw ValidationError("frequency grid: need b > a, l >= 2");
  return linspace(a, b, count);
}

namespace {

SurfaceTrace slice(const SurfaceTrace& t, Interval region) {
  SurfaceTrace out;
  out.k = t.k;
  out.meta = t.meta;
  for (size_t i = 0; i < t.size(); ++i)
    if (t.x[i] >= region.lo - 1e-12 && t.x[i] <= region.hi + 1e-12) {
      out.x.push_back(t.x[i]);
      out.d.push_back(t.d[i]);
    }
  return out;
}

FitBox default_box(Interval support, double peak_amp) {
  // alpha = (2 N^2 pi^2 h'(x*) / h^3)^(1/3) spans about [0.2, 6] for the
  // benchmark slope range; beta = alpha * x* stays within alpha * support.
  FitBox box;
  box.alpha_min = 0.2;
  box.alpha_max = 6.0;
  const double span = std::max(std::abs(support.lo), std::abs(support.hi)) + 2.0;
  box.beta_min = -box.alpha_max * span;
  box.beta_max = box.alpha_max * span;
  box.z_max = 20.0 * std::max(peak_amp, 1e-12);
  return box;
}

struct BranchOutcome {
  bool ok = false;
  RecoveredPoint point;
  FitReport fit;
  std::string reason;
};

BranchOutcome fit_one(const SurfaceTrace& trace, const FrequencyPlan& plan,
                      const BranchSpec& branch, int branch_index, Interval support,
                      const ReconstructOptions& opt) {
  BranchOutcome out;
  out.point.k = trace.k;
  out.point.branch = branch_index;
  try {
    SurfaceTrace sub = slice(trace, branch.region);
    if (sub.size() < 16) {
      out.reason = "branch region has too few samples";
      return out;
    }
    // Band-stop the propagative modes n < N. Their wavenumbers are nearly
    // constant; evaluate them at the mid-band width estimate.
    const double h_mid = 0.5 * (plan.mode * pi / plan.k_max + plan.mode * pi / plan.k_min);
    std::vector<double> kappas;
    for (int n = 0; n < plan.mode; ++n) {
      const double kn2 = trace.k * trace.k - n * n * pi * pi / (h_mid * h_mid);
      if (kn2 > 0.0) kappas.push_back(std::sqrt(kn2));
    }
    // Half-width from the resonant mode's wavenumber scale at the window
    // center, k_N(x_max) ~ sqrt(1.0188) * alpha_nominal.
    const double w_nominal = plan.mode * pi / trace.k;
    const double alpha_nominal =
        std::cbrt(2.0 * plan.mode * plan.mode * pi * pi * opt.eta /
                  (w_nominal * w_nominal * w_nominal));
    const double half_width = 0.15 * 1.01 * alpha_nominal;
    if (!kappas.empty()) sub = filter_resonant_component(sub, kappas, half_width);

    SurfaceTrace win = select_window(sub, opt.window_factor * opt.r, opt.eta);
    if (win.size() < 16) {
      out.reason = "window has too few samples";
      return out;
    }

    const FitBox box = opt.box ? *opt.box : default_box(support, [&] {
      double m = 0.0;
      for (const cplx& v : win.d) m = std::max(m, std::abs(v));
      return m;
    }());

    std::optional<AiryParams> init;
    try {
      init = box.clamp(direct_fit(win));
    } catch (const ValidationError&) {
      init = std::nullopt;  // grid fallback inside fit_least_squares
    }
    FitReport rep = fit_least_squares(win, box, init, opt.fit);
    if (!rep.converged) {
      out.reason = "fit did not converge";
      return out;
    }
    if (rep.params.alpha <= box.alpha_min + 1e-9 || rep.params.alpha >= box.alpha_max - 1e-9) {
      out.reason = "alpha pinned at the box edge";
      return out;
    }
    const double x_star = lambda_resonant_point(rep);
    const double margin = 0.25 * branch.region.length() + 0.5;
    if (x_star < support.lo - margin || x_star > support.hi + margin ||
        x_star < branch.region.lo - margin || x_star > branch.region.hi + margin) {
      out.reason = "recovered point outside the branch region";
      return out;
    }
    out.ok = true;
    out.point.x_star = x_star;
    out.point.width = plan.mode * pi / trace.k;
    out.fit = rep;
  } catch (const Error& e) {
    out.reason = e.what();
  }
  return out;
}

}  // namespace

double ReconstructionResult::h_app(double x) const {
  const auto& xs = breakpoints_x;
  const auto& hs = breakpoints_h;
  if (xs.empty()) throw ValidationError("h_app: empty reconstruction");
  if (x <= xs.front()) return hs.front();
  if (x >= xs.back()) return hs.back();
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const size_t i = static_cast<size_t>(it - xs.begin()) - 1;
  const double u = (x - xs[i]) / (xs[i + 1] - xs[i]);
  return hs[i] + u * (hs[i + 1] - hs[i]);
}

ReconstructionResult reconstruct_profile(const FrequencyPlan& plan,
                                         const std::vector<SurfaceTrace>& traces,
                                         Interval support,
                                         const ReconstructOptions& options,
                                         const Profile* truth) {
  plan.validate();
  if (traces.size() != plan.frequencies.size())
    throw ValidationError("reconstruct: need one trace per plan frequency");
  if (!(support.lo < support.hi)) throw ValidationError("reconstruct: empty support");

  std::vector<BranchSpec> branches = options.branches;
  if (branches.empty() && !traces.empty() && !traces[0].x.empty())
    branches.push_back({{traces[0].x.front(), traces[0].x.back()}, traces[0].x.back()});

  const long tasks = static_cast<long>(traces.size() * branches.size());
  std::vector<BranchOutcome> outcomes(tasks);
  parallel_for(options.exec, tasks, [&](long idx) {
    const size_t ti = static_cast<size_t>(idx) / branches.size();
    const size_t bi = static_cast<size_t>(idx) % branches.size();
    outcomes[idx] = fit_one(traces[ti], plan, branches[bi], static_cast<int>(bi),
                            support, options);
  });

  ReconstructionResult res;
  for (const BranchOutcome& oc : outcomes) {
    if (oc.ok) {
      res.points.push_back(oc.point);
      res.fits.push_back(oc.fit);
    } else {
      res.dropped.push_back({oc.point.k, oc.point.branch, oc.reason});
    }
  }
  if (res.points.size() < 3)
    throw NumericError("reconstruct: fewer than 3 frequencies survived");

  // Sort by recovered position, averaging near-duplicates from overlapping
  // branches.
  std::vector<size_t> order(res.points.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return res.points[a].x_star < res.points[b].x_star;
  });
  std::vector<RecoveredPoint> pts;
  std::vector<FitReport> fits;
  for (size_t oi : order) {
    if (!pts.empty() && std::abs(res.points[oi].x_star - pts.back().x_star) < options.merge_tol) {
      pts.back().x_star = 0.5 * (pts.back().x_star + res.points[oi].x_star);
      pts.back().width = 0.5 * (pts.back().width + res.points[oi].width);
      continue;
    }
    pts.push_back(res.points[oi]);
    fits.push_back(res.fits[oi]);
  }
  res.points = std::move(pts);
  res.fits = std::move(fits);

  const double anchor_l = options.anchor_left_width.value_or(plan.mode * pi / plan.k_max);
  const double anchor_r = options.anchor_right_width.value_or(plan.mode * pi / plan.k_min);
  res.anchor_left = {support.lo, anchor_l};
  res.anchor_right = {support.hi, anchor_r};

  res.breakpoints_x.push_back(support.lo);
  res.breakpoints_h.push_back(anchor_l);
  for (const RecoveredPoint& p : res.points) {
    if (p.x_star <= res.breakpoints_x.back() + 1e-9) continue;
    if (p.x_star >= support.hi - 1e-9) continue;
    res.breakpoints_x.push_back(p.x_star);
    res.breakpoints_h.push_back(p.width);
  }
  res.breakpoints_x.push_back(support.hi);
  res.breakpoints_h.push_back(anchor_r);

  if (truth) res.metrics = error_metrics(res, *truth);
  return res;
}

ErrorMetrics error_metrics(const ReconstructionResult& result, const Profile& truth) {
  ErrorMetrics m;
  for (const RecoveredPoint& p : result.points)
    m.sup_at_points = std::max(m.sup_at_points,
                               std::abs(result.h_app(p.x_star) - truth.h(p.x_star)));
  const double lo = result.breakpoints_x.front();
  const double hi = result.breakpoints_x.back();
  const int n = 2001;
  for (int i = 0; i <= n; ++i) {
    const double x = lo + (hi - lo) * i / n;
    m.sup_dense = std::max(m.sup_dense, std::abs(result.h_app(x) - truth.h(x)));
  }
  m.rel_sup_at_points = m.sup_at_points / truth.h_max;
  m.rel_sup_dense = m.sup_dense / truth.h_max;
  return m;
}

std::string reconstruction_to_json(const ReconstructionResult& r) {
  nlohmann::json j;
  for (const RecoveredPoint& p : r.points)
    j["points"].push_back({{"x_star", p.x_star}, {"width", p.width}, {"k", p.k},
                           {"branch", p.branch}});
  j["anchors"] = {{r.anchor_left.first, r.anchor_left.second},
                  {r.anchor_right.first, r.anchor_right.second}};
  j["h_app"] = {{"x", r.breakpoints_x}, {"h", r.breakpoints_h}};
  for (const DroppedFrequency& d : r.dropped)
    j["dropped"].push_back({{"k", d.k}, {"branch", d.branch}, {"reason", d.reason}});
  if (r.metrics) {
    j["metrics"] = {{"sup_at_points", r.metrics->sup_at_points},
                    {"sup_dense", r.metrics->sup_dense},
                    {"rel_sup_at_points", r.metrics->rel_sup_at_points},
                    {"rel_sup_dense", r.metrics->rel_sup_dense}};
  }
  return j.dump(2);
}

std::string reconstruction_plot_csv(const ReconstructionResult& r, const Profile* truth,
                                    int samples) {
  std::string s = truth ? "x,h_true,h_app\n" : "x,h_app\n";
  const double lo = r.breakpoints_x.front();
  const double hi = r.breakpoints_x.back();
  char buf[40];
  auto put = [&](double v) {
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    s.append(buf, res.ptr);
  };
  for (int i = 0; i <= samples; ++i) {
    const double x = lo + (hi - lo) * i / samples;
    put(x);
    if (truth) {
      s.push_back(',');
      put(truth->h(x));
    }
    s.push_back(',');
    put(r.h_app(x));
    s.push_back('\n');
  }
  return s;
}

}  // namespace wg
