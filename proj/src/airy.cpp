#include "wg/airy.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "wg/errors.hpp"

namespace wg {
namespace {

// Evaluation zones. The Maclaurin form Ai = c1 f - c2 g cancels
// catastrophically for x beyond ~3 (f, g grow like e^zeta while Ai decays),
// so the positive gap (3, 9) uses Taylor stepping of y'' = x y seeded from
// the asymptotic expansion at 9 and integrated downward (the stable direction
// for Ai). Bi has no cancellation and stays on the series there. The negative
// gap (-9, -7) uses the same knot scheme for all four values; beyond +-9 the
// asymptotic expansions are accurate to roundoff.
constexpr double kSeriesLo = -7.0;
constexpr double kSeriesHi = 3.0;
constexpr double kAsymEdge = 9.0;

// Ai(0) = 3^(-2/3)/Gamma(2/3), -Ai'(0) = 3^(-1/3)/Gamma(1/3).
constexpr double kC1 = 0.35502805388781723926;
constexpr double kC2 = 0.25881940379280679841;

struct SeriesSums {
  double f, fp, g, gp;
};

// f(x) = sum 3^k (1/3)_k x^(3k) / (3k)!, g(x) = sum 3^k (2/3)_k x^(3k+1) / (3k+1)!
SeriesSums maclaurin(double x) {
  const double x2 = x * x;
  const double x3 = x2 * x;
  double tf = 1.0;
  double tg = x;
  double f = tf, g = tg;
  double fp = 0.0;
  double gp = 1.0;
  for (int k = 1; k < 400; ++k) {
    const double tfp = tf * x2 / (3 * k - 1);
    const double tgp = tg * x2 / (3 * k);
    tf *= x3 / ((3 * k) * (3 * k - 1));
    tg *= x3 / ((3 * k + 1) * (3 * k));
    f += tf;
    g += tg;
    fp += tfp;
    gp += tgp;
    const double scale = std::abs(f) + std::abs(g) + 1.0;
    if (std::abs(tf) < 1e-18 * scale && std::abs(tg) < 1e-18 * scale) break;
  }
  return {f, fp, g, gp};
}

AiryValue from_series(double x) {
  const SeriesSums s = maclaurin(x);
  const double sqrt3 = std::numbers::sqrt3;
  return {kC1 * s.f - kC2 * s.g, kC1 * s.fp - kC2 * s.gp,
          sqrt3 * (kC1 * s.f + kC2 * s.g), sqrt3 * (kC1 * s.fp + kC2 * s.gp)};
}

// u_k, v_k coefficients of the large-|x| expansions.
struct AsymCoef {
  double u[41];
  double v[41];
  AsymCoef() {
    u[0] = v[0] = 1.0;
    for (int k = 1; k <= 40; ++k) {
      u[k] = u[k - 1] * (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) /
             ((2.0 * k - 1.0) * 216.0 * k);
      v[k] = u[k] * (6.0 * k + 1.0) / (1.0 - 6.0 * k);
    }
  }
};
const AsymCoef kCoef;

AiryValue asymptotic_positive(double x) {
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
  const double q = std::pow(x, 0.25);
  double su_alt = 0.0, sv_alt = 0.0, su = 0.0, sv = 0.0;
  double zk = 1.0;
  double prev = 1e300;
  for (int k = 0; k <= 40; ++k) {
    const double tu = kCoef.u[k] * zk;
    if (std::abs(tu) > prev) break;
    prev = std::abs(tu);
    const double tv = kCoef.v[k] * zk;
    const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
    su_alt += sgn * tu;
    sv_alt += sgn * tv;
    su += tu;
    sv += tv;
    zk /= zeta;
  }
  const double em = std::exp(-zeta);
  const double ep = std::exp(zeta);
  return {em / (2.0 * sqrt_pi * q) * su_alt, -q * em / (2.0 * sqrt_pi) * sv_alt,
          ep / (sqrt_pi * q) * su, q * ep / sqrt_pi * sv};
}

AiryValue asymptotic_negative(double x) {
  const double t = -x;
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  const double zeta = 2.0 / 3.0 * t * std::sqrt(t);
  const double q = std::pow(t, 0.25);
  const double c = std::cos(zeta - std::numbers::pi / 4.0);
  const double s = std::sin(zeta - std::numbers::pi / 4.0);
  double P = 0.0, Q = 0.0, Pv = 0.0, Qv = 0.0;
  double zk = 1.0;
  double prev = 1e300;
  for (int m = 0; 2 * m + 1 <= 40; ++m) {
    const double te = kCoef.u[2 * m] * zk;
    if (std::abs(te) > prev) break;
    prev = std::abs(te);
    const double sgn = (m % 2 == 0) ? 1.0 : -1.0;
    P += sgn * te;
    Pv += sgn * kCoef.v[2 * m] * zk;
    const double zk1 = zk / zeta;
    Q += sgn * kCoef.u[2 * m + 1] * zk1;
    Qv += sgn * kCoef.v[2 * m + 1] * zk1;
    zk = zk1 / zeta;
  }
  return {(c * P + s * Q) / (sqrt_pi * q), (s * Pv - c * Qv) * q / sqrt_pi,
          (-s * P + c * Q) / (sqrt_pi * q), (c * Pv + s * Qv) * q / sqrt_pi};
}

// One Taylor step of y'' = x y: from (value, slope) at x0 to x0 + delta.
// Coefficients c_{k+2} = (x0 c_k + c_{k-1}) / ((k+1)(k+2)).
void taylor_step(double x0, double delta, double& value, double& slope) {
  std::array<double, 90> c{};
  c[0] = value;
  c[1] = slope;
  c[2] = 0.5 * x0 * c[0];
  for (int k = 1; k + 2 < static_cast<int>(c.size()); ++k)
    c[k + 2] = (x0 * c[k] + c[k - 1]) / ((k + 1.0) * (k + 2.0));
  double v = 0.0, d = 0.0;
  for (int k = static_cast<int>(c.size()) - 1; k >= 1; --k) {
    v = v * delta + c[k];
    d = d * delta + k * c[k];
  }
  value = v * delta + c[0];
  slope = d;
}

// Knot tables bridging the gaps, seeded at +-9 from the asymptotics and
// stepped inward (stable for Ai on the right, neutral on the oscillatory
// left where all four values are carried).
struct Knots {
  static constexpr int kPosCount = 7;   // 9, 8, ..., 3
  static constexpr int kNegCount = 5;   // -9, -8.5, ..., -7
  double pos_ai[kPosCount], pos_aip[kPosCount];
  double neg_ai[kNegCount], neg_aip[kNegCount];
  double neg_bi[kNegCount], neg_bip[kNegCount];
  Knots() {
    const AiryValue seed_p = asymptotic_positive(9.0);
    double a = seed_p.ai, ap = seed_p.ai_prime;
    pos_ai[0] = a;
    pos_aip[0] = ap;
    for (int i = 1; i < kPosCount; ++i) {
      taylor_step(9.0 - (i - 1), -1.0, a, ap);
      pos_ai[i] = a;
      pos_aip[i] = ap;
    }
    const AiryValue seed_n = asymptotic_negative(-9.0);
    a = seed_n.ai;
    ap = seed_n.ai_prime;
    double b = seed_n.bi, bp = seed_n.bi_prime;
    neg_ai[0] = a;
    neg_aip[0] = ap;
    neg_bi[0] = b;
    neg_bip[0] = bp;
    for (int i = 1; i < kNegCount; ++i) {
      const double x0 = -9.0 + 0.5 * (i - 1);
      taylor_step(x0, 0.5, a, ap);
      taylor_step(x0, 0.5, b, bp);
      neg_ai[i] = a;
      neg_aip[i] = ap;
      neg_bi[i] = b;
      neg_bip[i] = bp;
    }
  }
};

const Knots& knots() {
  static const Knots k;
  return k;
}

AiryValue from_positive_gap(double x) {
  // Ai from the nearest knot; Bi from the cancellation-free series.
  const Knots& kn = knots();
  int i = static_cast<int>(std::lround(9.0 - x));
  i = std::min(std::max(i, 0), Knots::kPosCount - 1);
  const double x0 = 9.0 - i;
  double a = kn.pos_ai[i], ap = kn.pos_aip[i];
  taylor_step(x0, x - x0, a, ap);
  const SeriesSums s = maclaurin(x);
  const double sqrt3 = std::numbers::sqrt3;
  return {a, ap, sqrt3 * (kC1 * s.f + kC2 * s.g), sqrt3 * (kC1 * s.fp + kC2 * s.gp)};
}

AiryValue from_negative_gap(double x) {
  const Knots& kn = knots();
  int i = static_cast<int>(std::lround((x + 9.0) * 2.0));
  i = std::min(std::max(i, 0), Knots::kNegCount - 1);
  const double x0 = -9.0 + 0.5 * i;
  double a = kn.neg_ai[i], ap = kn.neg_aip[i];
  double b = kn.neg_bi[i], bp = kn.neg_bip[i];
  taylor_step(x0, x - x0, a, ap);
  taylor_step(x0, x - x0, b, bp);
  return {a, ap, b, bp};
}

}  // namespace

AiryValue airy(double x) {
  if (!std::isfinite(x)) throw ValidationError("airy: non-finite argument");
  if (x >= kSeriesLo && x <= kSeriesHi) return from_series(x);
  if (x > kSeriesHi && x < kAsymEdge) return from_positive_gap(x);
  if (x >= kAsymEdge) return asymptotic_positive(x);
  if (x > -kAsymEdge) return from_negative_gap(x);
  return asymptotic_negative(x);
}

namespace {

// Bracketed bisection + Newton polish on a scalar function with derivative.
template <typename F, typename DF>
double refine_root(F f, DF df, double lo, double hi) {
  double flo = f(lo);
  for (int it = 0; it < 90; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((flo < 0) == (fm < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-13) break;
  }
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 4; ++it) {
    const double d = df(x);
    if (d == 0.0) break;
    const double step = f(x) / d;
    const double xn = x - step;
    if (xn < lo - 1e-9 || xn > hi + 1e-9) break;
    x = xn;
    if (std::abs(step) < 1e-15) break;
  }
  return x;
}

std::vector<double> descending_zeros(int count, bool of_derivative) {
  if (count < 1 || count > 20)
    throw ValidationError("airy zeros: count must be in [1, 20]");
  auto f = [of_derivative](double x) {
    const AiryValue v = airy(x);
    return of_derivative ? v.ai_prime : v.ai;
  };
  auto df = [of_derivative](double x) {
    const AiryValue v = airy(x);
    return of_derivative ? x * v.ai : v.ai_prime;  // Ai'' = x Ai
  };
  std::vector<double> zeros;
  const double step = 0.02;
  double x_hi = 0.0;
  double f_hi = f(x_hi);
  for (double x = -step; zeros.size() < static_cast<size_t>(count); x -= step) {
    if (x < -25.0) throw NumericError("airy zeros: scan exhausted");
    const double fx = f(x);
    if ((fx < 0) != (f_hi < 0)) zeros.push_back(refine_root(f, df, x, x_hi));
    x_hi = x;
    f_hi = fx;
  }
  return zeros;
}

}  // namespace

std::vector<double> airy_first_zeros(int count) { return descending_zeros(count, false); }

std::vector<double> airy_prime_first_zeros(int count) { return descending_zeros(count, true); }

AiryMax airy_global_max() {
  // Ai' has its first sign change in (-2.34, 0); that stationary point is the
  // global max (Ai > 0 and decreasing for x >= 0, oscillation amplitude decays
  // for more negative x).
  auto f = [](double x) { return airy(x).ai_prime; };
  auto df = [](double x) { return x * airy(x).ai; };
  const double x = refine_root(f, df, -2.3, -0.5);
  return {x, airy(x).ai};
}

}  // namespace wg
