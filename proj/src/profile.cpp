#include "wg/profile.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "json.hpp"
#include "wg/errors.hpp"

namespace wg {

using json = nlohmann::json;

void measure_variation(Profile& p, int samples) {
  double s1 = 0.0, s2 = 0.0;
  const double lo = p.support.lo, hi = p.support.hi;
  for (int i = 0; i <= samples; ++i) {
    const double x = lo + (hi - lo) * i / samples;
    if (p.excluded_at(x)) continue;
    s1 = std::max(s1, std::abs(p.dh(x)));
    s2 = std::max(s2, std::abs(p.d2h(x)));
  }
  p.sup_slope = s1;
  p.sup_curvature = s2;
  p.slope_scale = 1.1 * s1;
  p.eta = 1.1 * std::max(s1, std::sqrt(s2));
}

namespace {

constexpr double g1 = 3e-6;
constexpr double g2 = 8192.0 / 5.0 * 1e-6;
constexpr double g3 = 5e-5;
constexpr double g4 = 512.0 / 3.0 * 1e-5;  // = g3 * q(4), q below
constexpr double g5 = 0.01 / 30.0;
constexpr double g6 = 25e-4;
constexpr double g7 = 5e-4;
constexpr double g8 = 4e-4;

double clamp_arg(double x, double lo, double hi) { return std::min(std::max(x, lo), hi); }

Profile make_h1() {
  Profile p;
  p.name = "h1";
  auto poly = [](double x) { return x * x * x * x * x / 5.0 - 32.0 * x * x * x / 3.0 + 256.0 * x; };
  p.h = [poly](double x) {
    if (x < -4.0) return 0.1 - g2;
    if (x > 4.0) return 0.1 + g2;
    return 0.1 + g1 * poly(x);
  };
  p.dh = [](double x) {
    if (x < -4.0 || x > 4.0) return 0.0;
    const double t = x * x - 16.0;
    return g1 * t * t;
  };
  p.d2h = [](double x) {
    if (x < -4.0 || x > 4.0) return 0.0;
    return 4.0 * g1 * x * (x * x - 16.0);
  };
  p.h_min = 0.1 - g2;
  p.h_max = 0.1 + g2;
  p.support = {-4.0, 4.0};
  return p;
}

double q_poly(double t) { return t * t * t * t * t / 5.0 - 2.0 * t * t * t * t + 16.0 * t * t * t / 3.0; }

Profile make_h2() {
  Profile p;
  p.name = "h2";
  p.h = [](double x) {
    if (x < -4.0) return 0.1 - g4;
    if (x > 4.0) return 0.1 + g4;
    const double s = x < 0.0 ? -1.0 : 1.0;
    return 0.1 + s * g3 * q_poly(std::abs(x));
  };
  p.dh = [](double x) {
    if (x < -4.0 || x > 4.0) return 0.0;
    const double t = std::abs(x);
    const double d = t - 4.0;
    return g3 * t * t * d * d;
  };
  p.d2h = [](double x) {
    if (x < -4.0 || x > 4.0) return 0.0;
    const double s = x < 0.0 ? -1.0 : 1.0;
    const double t = std::abs(x);
    return s * g3 * 2.0 * t * (t - 4.0) * (2.0 * t - 4.0);
  };
  p.h_min = 0.1 - g4;
  p.h_max = 0.1 + g4;
  p.support = {-4.0, 4.0};
  return p;
}

Profile make_h3() {
  Profile p;
  p.name = "h3";
  p.h = [](double x) { return 0.1 + g5 * clamp_arg(x, -4.0, 4.0); };
  p.dh = [](double x) { return (x >= -4.0 && x <= 4.0) ? g5 : 0.0; };
  p.d2h = [](double) { return 0.0; };
  p.h_min = 0.1 - 4.0 * g5;
  p.h_max = 0.1 + 4.0 * g5;
  p.support = {-4.0, 4.0};
  return p;
}

Profile make_h4() {
  Profile p;
  p.name = "h4";
  p.h = [](double x) {
    if (x < -4.0) return 0.1 - 4.0 * g5;
    if (x > 4.0) return 0.1 + 4.0 * g5;
    return 0.1 - 4.0 * g5 + 4.0 * g5 * std::sqrt((x + 4.0) / 2.0);
  };
  p.dh = [](double x) {
    if (x <= -4.0 || x > 4.0) return x == -4.0 ? HUGE_VAL : 0.0;
    return std::numbers::sqrt2 * g5 / std::sqrt(x + 4.0);
  };
  p.d2h = [](double x) {
    if (x <= -4.0 || x > 4.0) return x == -4.0 ? -HUGE_VAL : 0.0;
    return -std::numbers::sqrt2 * g5 / (2.0 * (x + 4.0) * std::sqrt(x + 4.0));
  };
  p.h_min = 0.1 - 4.0 * g5;
  p.h_max = 0.1 + 4.0 * g5;
  p.support = {-4.0, 4.0};
  p.nonsmooth = true;  // h' blows up at x = -4
  p.excluded = {{-4.0 - 1e-3, -4.0 + 1e-3}};
  return p;
}

Profile make_h5() {
  Profile p;
  p.name = "h5";
  p.h = [](double x) {
    if (x < -5.0 || x > 5.0) return 0.1;
    return 0.1 + g6 * std::sin(std::numbers::pi / 10.0 * (x + 5.0));
  };
  p.dh = [](double x) {
    if (x < -5.0 || x > 5.0) return 0.0;
    return g6 * std::numbers::pi / 10.0 * std::cos(std::numbers::pi / 10.0 * (x + 5.0));
  };
  p.d2h = [](double x) {
    if (x < -5.0 || x > 5.0) return 0.0;
    const double w = std::numbers::pi / 10.0;
    return -g6 * w * w * std::sin(w * (x + 5.0));
  };
  p.h_min = 0.1;
  p.h_max = 0.1 + g6;
  p.support = {-5.0, 5.0};
  return p;
}

Profile make_h6() {
  Profile p;
  p.name = "h6";
  p.h = [](double x) {
    if (x >= -5.0 && x <= 0.0) return 0.1 - g7 * (x + 5.0);
    if (x > 0.0 && x <= 4.0) return 0.1 + g6 / 4.0 * (x - 4.0);
    return 0.1;
  };
  p.dh = [](double x) {
    if (x >= -5.0 && x <= 0.0) return -g7;
    if (x > 0.0 && x <= 4.0) return g6 / 4.0;
    return 0.0;
  };
  p.d2h = [](double) { return 0.0; };
  p.h_min = 0.1 - 5.0 * g7;
  p.h_max = 0.1;
  p.support = {-5.0, 4.0};
  return p;
}

Profile make_h7() {
  Profile p;
  p.name = "h7";
  const double base = 0.1 + g8 * std::numbers::sqrt3;
  const double left = base + 2.0 * g8 * std::sin(4.0 * std::numbers::pi * std::sqrt(1.5) / 3.0);
  auto arg = [](double x) { return 4.0 * std::numbers::pi * std::sqrt(x + 5.0) / 3.0; };
  p.h = [base, left, arg](double x) {
    if (x < -3.5) return left;
    if (x > 4.0) return base;
    return base + 2.0 * g8 * std::sin(arg(x));
  };
  p.dh = [arg](double x) {
    if (x < -3.5 || x > 4.0) return 0.0;
    return 4.0 * std::numbers::pi * g8 * std::cos(arg(x)) / (3.0 * std::sqrt(x + 5.0));
  };
  p.d2h = [arg](double x) {
    if (x < -3.5 || x > 4.0) return 0.0;
    const double c = 4.0 * std::numbers::pi * g8 / 3.0;
    const double t = x + 5.0;
    return c * (-std::sin(arg(x)) * 2.0 * std::numbers::pi / (3.0 * t) -
                std::cos(arg(x)) / (2.0 * t * std::sqrt(t)));
  };
  p.h_min = base - 2.0 * g8;
  p.h_max = base + 2.0 * g8;
  p.support = {-3.5, 4.0};
  return p;
}

}  // namespace

Profile builtin_profile(const std::string& id) {
  Profile p;
  if (id == "h1") p = make_h1();
  else if (id == "h2") p = make_h2();
  else if (id == "h3") p = make_h3();
  else if (id == "h4") p = make_h4();
  else if (id == "h5") p = make_h5();
  else if (id == "h6") p = make_h6();
  else if (id == "h7") p = make_h7();
  else throw ValidationError("builtin_profile: unknown id '" + id + "'");
  measure_variation(p);
  return p;
}

Profile ramp_profile(double slope, double half_width, double base) {
  if (slope <= 0.0 || half_width <= 0.0)
    throw ValidationError("ramp_profile: slope and half_width must be positive");
  Profile p;
  p.name = "ramp";
  const double hw = half_width;
  p.h = [slope, base, hw](double x) { return base + slope * std::min(std::max(x, -hw), hw); };
  p.dh = [slope, hw](double x) { return (x >= -hw && x <= hw) ? slope : 0.0; };
  p.d2h = [](double) { return 0.0; };
  p.h_min = base - slope * hw;
  p.h_max = base + slope * hw;
  p.support = {-hw, hw};
  measure_variation(p);
  return p;
}

Profile ramp_between(double slope, double h_lo, double h_hi) {
  if (slope <= 0.0 || h_hi <= h_lo)
    throw ValidationError("ramp_between: need slope > 0 and h_hi > h_lo");
  const double half_width = 0.5 * (h_hi - h_lo) / slope;
  Profile p = ramp_profile(slope, half_width, 0.5 * (h_lo + h_hi));
  p.name = "ramp_between";
  return p;
}

// ---------------------------------------------------------------------------
// Monotone cubic interpolation (Fritsch-Carlson slopes, Hermite evaluation).

MonotoneCubic make_monotone_cubic(std::vector<double> x, std::vector<double> y) {
  const size_t n = x.size();
  if (n < 2 || y.size() != n)
    throw ValidationError("monotone cubic: need >= 2 matching samples");
  for (size_t i = 1; i < n; ++i)
    if (!(x[i] > x[i - 1]))
      throw ValidationError("monotone cubic: abscissae must be strictly increasing");
  std::vector<double> d(n - 1), m(n);
  for (size_t i = 0; i + 1 < n; ++i) d[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
  m[0] = d[0];
  m[n - 1] = d[n - 2];
  for (size_t i = 1; i + 1 < n; ++i)
    m[i] = (d[i - 1] * d[i] <= 0.0) ? 0.0 : 0.5 * (d[i - 1] + d[i]);
  for (size_t i = 0; i + 1 < n; ++i) {
    if (d[i] == 0.0) {
      m[i] = m[i + 1] = 0.0;
      continue;
    }
    const double a = m[i] / d[i], b = m[i + 1] / d[i];
    const double s = a * a + b * b;
    if (s > 9.0) {
      const double t = 3.0 / std::sqrt(s);
      m[i] = t * a * d[i];
      m[i + 1] = t * b * d[i];
    }
  }
  return {std::move(x), std::move(y), std::move(m)};
}

namespace {
size_t locate(const std::vector<double>& xs, double t) {
  if (t <= xs.front()) return 0;
  if (t >= xs[xs.size() - 2]) return xs.size() - 2;
  return static_cast<size_t>(std::upper_bound(xs.begin(), xs.end(), t) - xs.begin()) - 1;
}
}  // namespace

double MonotoneCubic::operator()(double t) const {
  const size_t i = locate(x, t);
  const double h = x[i + 1] - x[i];
  const double u = std::min(std::max((t - x[i]) / h, 0.0), 1.0);
  const double u2 = u * u, u3 = u2 * u;
  return y[i] * (2 * u3 - 3 * u2 + 1) + h * m[i] * (u3 - 2 * u2 + u) +
         y[i + 1] * (-2 * u3 + 3 * u2) + h * m[i + 1] * (u3 - u2);
}

double MonotoneCubic::derivative(double t) const {
  const size_t i = locate(x, t);
  const double h = x[i + 1] - x[i];
  const double u = std::min(std::max((t - x[i]) / h, 0.0), 1.0);
  const double u2 = u * u;
  return (y[i] * (6 * u2 - 6 * u) + h * m[i] * (3 * u2 - 4 * u + 1) +
          y[i + 1] * (-6 * u2 + 6 * u) + h * m[i + 1] * (3 * u2 - 2 * u)) / h;
}

double MonotoneCubic::second_derivative(double t) const {
  const size_t i = locate(x, t);
  const double h = x[i + 1] - x[i];
  const double u = std::min(std::max((t - x[i]) / h, 0.0), 1.0);
  return (y[i] * (12 * u - 6) + h * m[i] * (6 * u - 4) + y[i + 1] * (-12 * u + 6) +
          h * m[i + 1] * (6 * u - 2)) / (h * h);
}

Profile profile_from_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw IoError(std::string("profile_from_json: ") + e.what());
  }
  if (j.contains("id")) return builtin_profile(j.at("id").get<std::string>());
  if (!j.contains("x") || !j.contains("h"))
    throw ValidationError("profile_from_json: need 'id' or 'x'/'h' table");
  auto xs = j.at("x").get<std::vector<double>>();
  auto hs = j.at("h").get<std::vector<double>>();
  auto spline = std::make_shared<MonotoneCubic>(make_monotone_cubic(xs, hs));
  Profile p;
  p.name = j.value("name", std::string("table"));
  p.h = [spline](double x) { return (*spline)(x); };
  p.dh = [spline](double x) { return spline->derivative(x); };
  p.d2h = [spline](double x) { return spline->second_derivative(x); };
  p.h_min = *std::min_element(hs.begin(), hs.end());
  p.h_max = *std::max_element(hs.begin(), hs.end());
  if (j.contains("support")) {
    auto s = j.at("support").get<std::vector<double>>();
    if (s.size() != 2) throw ValidationError("profile_from_json: support must be [a, b]");
    p.support = {s[0], s[1]};
  } else {
    p.support = {spline->x.front(), spline->x.back()};
  }
  measure_variation(p);
  return p;
}

std::string profile_to_json(const Profile& p, int table_samples) {
  json j;
  const bool builtin = p.name.size() == 2 && p.name[0] == 'h' && table_samples == 0;
  if (builtin) {
    j["id"] = p.name;
  } else {
    const int n = table_samples > 1 ? table_samples : 401;
    std::vector<double> xs(n), hs(n);
    const double lo = p.support.lo - 0.5, hi = p.support.hi + 0.5;
    for (int i = 0; i < n; ++i) {
      xs[i] = lo + (hi - lo) * i / (n - 1);
      hs[i] = p.h(xs[i]);
    }
    j["name"] = p.name;
    j["x"] = xs;
    j["h"] = hs;
    j["support"] = {p.support.lo, p.support.hi};
  }
  return j.dump(2);
}

}  // namespace wg
