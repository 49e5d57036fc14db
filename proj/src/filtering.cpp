#include "wg/filtering.hpp"

#include <cmath>
#include <numbers>

#include "wg/errors.hpp"

namespace wg {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;

bool is_pow2(size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void fft_radix2(std::vector<cplx>& a, bool invert) {
  const size_t n = a.size();
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    const double ang = two_pi / static_cast<double>(len) * (invert ? 1.0 : -1.0);
    const cplx wl(std::cos(ang), std::sin(ang));
    for (size_t i = 0; i < n; i += len) {
      cplx w(1.0, 0.0);
      for (size_t j = 0; j < len / 2; ++j) {
        const cplx u = a[i + j];
        const cplx v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wl;
      }
    }
  }
  if (invert)
    for (cplx& v : a) v /= static_cast<double>(n);
}

void dft_direct(std::vector<cplx>& a, bool invert) {
  const size_t n = a.size();
  std::vector<cplx> out(n, cplx(0.0, 0.0));
  const double sgn = invert ? 1.0 : -1.0;
  for (size_t q = 0; q < n; ++q) {
    for (size_t j = 0; j < n; ++j) {
      const double ang = sgn * two_pi * static_cast<double>(q * j % n) / static_cast<double>(n);
      out[q] += a[j] * cplx(std::cos(ang), std::sin(ang));
    }
    if (invert) out[q] /= static_cast<double>(n);
  }
  a = std::move(out);
}

}  // namespace

void fft(std::vector<cplx>& a, bool invert) {
  if (a.size() < 2) return;
  if (is_pow2(a.size()))
    fft_radix2(a, invert);
  else
    dft_direct(a, invert);
}

SurfaceTrace band_stop(const SurfaceTrace& trace, const std::vector<double>& kappas,
                       const std::vector<double>& half_widths) {
  if (kappas.size() != half_widths.size())
    throw ValidationError("band_stop: kappas and half_widths must match");
  if (kappas.empty()) return trace;
  if (!trace.uniform())
    throw ValidationError("band_stop: resample required (non-uniform sampling)");
  const size_t n = trace.size();
  if (n < 4) return trace;
  const double tau = trace.step();

  // Even (mirror) extension keeps the periodization continuous; a raw DFT of
  // the bare window leaks the removed carriers across the whole spectrum
  // through the wrap-around jump.
  const size_t m = 2 * n;
  std::vector<cplx> spec(m);
  for (size_t j = 0; j < n; ++j) spec[j] = trace.d[j];
  for (size_t j = 0; j < n; ++j) spec[n + j] = trace.d[n - 1 - j];
  fft(spec, false);
  for (size_t j = 0; j < m; ++j) {
    // Signed spatial frequency of bin j.
    double freq = two_pi * static_cast<double>(j) / (tau * static_cast<double>(m));
    if (j > m / 2) freq -= two_pi / tau;
    for (size_t q = 0; q < kappas.size(); ++q) {
      if (std::abs(std::abs(freq) - std::abs(kappas[q])) <= half_widths[q]) {
        spec[j] = 0.0;
        break;
      }
    }
  }
  fft(spec, true);

  SurfaceTrace out = trace;
  for (size_t j = 0; j < n; ++j) out.d[j] = spec[j];
  out.meta["filtered_bands"] = kappas;
  return out;
}

SurfaceTrace filter_resonant_component(const SurfaceTrace& trace, const ModeContext& ctx,
                                       const std::vector<double>& propagative_wavenumbers) {
  const double x_ref = trace.x.empty() ? 0.0 : 0.5 * (trace.x.front() + trace.x.back());
  const double w = 0.15 * std::abs(ctx.kn(x_ref));
  return filter_resonant_component(trace, propagative_wavenumbers, w);
}

namespace {

// Least-squares removal of the carrier subspace {e^(+-i kappa x)} with linear
// amplitude drift. Propagative modes have near-constant k_n, so four terms
// per band capture them without the edge ringing a hard spectral cut causes;
// the band-stop afterwards only removes what little is left in-band.
void subtract_carriers(SurfaceTrace& t, double kappa) {
  const size_t n = t.size();
  const double x_mid = 0.5 * (t.x.front() + t.x.back());
  auto basis = [&](int a, double x) -> cplx {
    const cplx osc = std::exp(cplx(0.0, (a % 2 == 0 ? kappa : -kappa) * x));
    return a < 2 ? osc : (x - x_mid) * osc;
  };
  cplx g[4][4] = {};
  cplx r[4] = {};
  for (size_t i = 0; i < n; ++i) {
    cplx phi[4];
    for (int a = 0; a < 4; ++a) phi[a] = basis(a, t.x[i]);
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) g[a][b] += std::conj(phi[a]) * phi[b];
      r[a] += std::conj(phi[a]) * t.d[i];
    }
  }
  // Gaussian elimination with partial pivoting on the 4x4 normal system.
  int idx[4] = {0, 1, 2, 3};
  for (int c = 0; c < 4; ++c) {
    int piv = c;
    for (int q = c + 1; q < 4; ++q)
      if (std::abs(g[idx[q]][c]) > std::abs(g[idx[piv]][c])) piv = q;
    std::swap(idx[c], idx[piv]);
    if (std::abs(g[idx[c]][c]) < 1e-300) return;  // degenerate: skip subtraction
    for (int q = c + 1; q < 4; ++q) {
      const cplx w = g[idx[q]][c] / g[idx[c]][c];
      for (int cc = c; cc < 4; ++cc) g[idx[q]][cc] -= w * g[idx[c]][cc];
      r[idx[q]] -= w * r[idx[c]];
    }
  }
  cplx coef[4];
  for (int c = 3; c >= 0; --c) {
    cplx s = r[idx[c]];
    for (int cc = c + 1; cc < 4; ++cc) s -= g[idx[c]][cc] * coef[cc];
    coef[c] = s / g[idx[c]][c];
  }
  for (size_t i = 0; i < n; ++i)
    for (int a = 0; a < 4; ++a) t.d[i] -= coef[a] * basis(a, t.x[i]);
}

}  // namespace

SurfaceTrace filter_resonant_component(const SurfaceTrace& trace,
                                       const std::vector<double>& propagative_wavenumbers,
                                       double half_width) {
  if (propagative_wavenumbers.empty()) return trace;
  if (half_width <= 0.0)
    throw ValidationError("filter_resonant_component: half-width must be positive");
  SurfaceTrace out = trace;
  for (double kappa : propagative_wavenumbers) subtract_carriers(out, kappa);
  std::vector<double> widths(propagative_wavenumbers.size(), half_width);
  return band_stop(out, propagative_wavenumbers, widths);
}

SurfaceTrace select_window(const SurfaceTrace& trace, double r, double eta) {
  if (trace.size() < 2) throw ValidationError("select_window: empty trace");
  if (!(r > 0.0) || !(eta > 0.0))
    throw ValidationError("select_window: r and eta must be positive");
  const double R = r * std::pow(eta, -1.0 / 3.0);
  size_t im = 0;
  for (size_t i = 1; i < trace.size(); ++i)
    if (std::abs(trace.d[i]) > std::abs(trace.d[im])) im = i;
  const double center = trace.x[im];
  double lo = center - R, hi = center + R;
  bool truncated = false;
  if (lo < trace.x.front()) {
    lo = trace.x.front();
    truncated = true;
  }
  if (hi > trace.x.back()) {
    hi = trace.x.back();
    truncated = true;
  }
  SurfaceTrace out;
  out.k = trace.k;
  out.meta = trace.meta;
  for (size_t i = 0; i < trace.size(); ++i) {
    if (trace.x[i] >= lo - 1e-12 && trace.x[i] <= hi + 1e-12) {
      out.x.push_back(trace.x[i]);
      out.d.push_back(trace.d[i]);
    }
  }
  out.meta["window"] = {{"center", center}, {"radius", R}, {"truncated", truncated}};
  return out;
}

}  // namespace wg
