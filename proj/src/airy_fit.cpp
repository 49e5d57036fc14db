#include "wg/airy_fit.hpp"

#include <algorithm>
#include <cmath>

#include "wg/airy.hpp"
#include "wg/errors.hpp"

namespace wg {

bool FitBox::contains(const AiryParams& p) const {
  return std::abs(p.z) <= z_max && p.alpha >= alpha_min && p.alpha <= alpha_max &&
         p.beta >= beta_min && p.beta <= beta_max;
}

AiryParams FitBox::clamp(const AiryParams& p) const {
  AiryParams q = p;
  const double az = std::abs(q.z);
  if (az > z_max && az > 0.0) q.z *= z_max / az;
  q.alpha = std::min(std::max(q.alpha, alpha_min), alpha_max);
  q.beta = std::min(std::max(q.beta, beta_min), beta_max);
  return q;
}

cplx model_eval(const AiryParams& p, double t) {
  return p.z * airy_ai(p.beta - p.alpha * t);
}

std::vector<cplx> model_eval(const AiryParams& p, const std::vector<double>& t) {
  std::vector<cplx> d(t.size());
  for (size_t i = 0; i < t.size(); ++i) d[i] = model_eval(p, t[i]);
  return d;
}

namespace {

void require_data(const std::vector<double>& t, const std::vector<cplx>& d) {
  if (t.empty() || t.size() != d.size())
    throw ValidationError("least squares: need matching, non-empty t and d");
}

}  // namespace

double lsq_objective(const AiryParams& p, const std::vector<double>& t,
                     const std::vector<cplx>& d) {
  require_data(t, d);
  double s = 0.0;
  for (size_t i = 0; i < t.size(); ++i) s += std::norm(model_eval(p, t[i]) - d[i]);
  return 0.5 * s / static_cast<double>(t.size());
}

Vector4 lsq_gradient(const AiryParams& p, const std::vector<double>& t,
                     const std::vector<cplx>& d) {
  require_data(t, d);
  Vector4 g{0.0, 0.0, 0.0, 0.0};
  for (size_t i = 0; i < t.size(); ++i) {
    const AiryValue av = airy(p.beta - p.alpha * t[i]);
    const cplx r = p.z * av.ai - d[i];
    g[0] += av.ai * r.real();
    g[1] += av.ai * r.imag();
    const double zr = (p.z * std::conj(r)).real();
    g[2] += -t[i] * av.ai_prime * zr;
    g[3] += av.ai_prime * zr;
  }
  const double w = 1.0 / static_cast<double>(t.size());
  for (double& v : g) v *= w;
  return g;
}

Matrix4 lsq_gauss_newton(const AiryParams& p, const std::vector<double>& t,
                         const std::vector<cplx>& d) {
  require_data(t, d);
  Matrix4 m{};
  for (size_t i = 0; i < t.size(); ++i) {
    const AiryValue av = airy(p.beta - p.alpha * t[i]);
    // Jacobian rows of the complex residual wrt (Re z, Im z, alpha, beta):
    // (A, iA, -t z A', z A'). Accumulate Re(J^H J).
    const double A = av.ai, P = av.ai_prime;
    const cplx ja = -t[i] * p.z * P;
    const cplx jb = p.z * P;
    const double rows[4][2] = {{A, 0.0},
                               {0.0, A},
                               {ja.real(), ja.imag()},
                               {jb.real(), jb.imag()}};
    for (int a = 0; a < 4; ++a)
      for (int b = a; b < 4; ++b)
        m[a][b] += rows[a][0] * rows[b][0] + rows[a][1] * rows[b][1];
  }
  const double w = 1.0 / static_cast<double>(t.size());
  for (int a = 0; a < 4; ++a)
    for (int b = a; b < 4; ++b) {
      m[a][b] *= w;
      m[b][a] = m[a][b];
    }
  return m;
}

Matrix4 lsq_hessian(const AiryParams& p, const std::vector<double>& t,
                    const std::vector<cplx>& d) {
  require_data(t, d);
  Matrix4 m{};
  const double z2 = std::norm(p.z);
  for (size_t i = 0; i < t.size(); ++i) {
    const double u = p.beta - p.alpha * t[i];
    const AiryValue av = airy(u);
    const double A = av.ai, P = av.ai_prime;
    const double S = u * A;  // Ai''
    const double ti = t[i];
    const cplx r = p.z * A - d[i];
    const cplx two_model_minus_d = p.z * A + r;  // 2 z A - d
    const double zr = (p.z * std::conj(r)).real();

    m[0][0] += A * A;
    m[1][1] += A * A;
    m[0][2] += -ti * P * two_model_minus_d.real();
    m[1][2] += -ti * P * two_model_minus_d.imag();
    m[0][3] += P * two_model_minus_d.real();
    m[1][3] += P * two_model_minus_d.imag();
    m[2][2] += ti * ti * (S * zr + P * P * z2);
    m[2][3] += -ti * (S * zr + P * P * z2);
    m[3][3] += S * zr + P * P * z2;
  }
  const double w = 1.0 / static_cast<double>(t.size());
  for (int a = 0; a < 4; ++a)
    for (int b = a; b < 4; ++b) {
      m[a][b] *= w;
      m[b][a] = m[a][b];
    }
  return m;
}

Vector4 symmetric_eigenvalues(Matrix4 m) {
  // Classic Jacobi rotations; a 4x4 converges in a handful of sweeps.
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) off += m[a][b] * m[a][b];
    if (off < 1e-28) break;
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) {
        if (std::abs(m[a][b]) < 1e-300) continue;
        const double theta = 0.5 * (m[b][b] - m[a][a]) / m[a][b];
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int q = 0; q < 4; ++q) {
          const double maq = m[a][q], mbq = m[b][q];
          m[a][q] = c * maq - s * mbq;
          m[b][q] = s * maq + c * mbq;
        }
        for (int q = 0; q < 4; ++q) {
          const double mqa = m[q][a], mqb = m[q][b];
          m[q][a] = c * mqa - s * mqb;
          m[q][b] = s * mqa + c * mqb;
        }
      }
  }
  Vector4 ev{m[0][0], m[1][1], m[2][2], m[3][3]};
  std::sort(ev.begin(), ev.end());
  return ev;
}

cplx project_amplitude(double alpha, double beta, const std::vector<double>& t,
                       const std::vector<cplx>& d) {
  require_data(t, d);
  double aa = 0.0;
  cplx ad = 0.0;
  for (size_t i = 0; i < t.size(); ++i) {
    const double A = airy_ai(beta - alpha * t[i]);
    aa += A * A;
    ad += A * d[i];
  }
  return aa > 0.0 ? ad / aa : cplx(0.0, 0.0);
}

// ---------------------------------------------------------------------------
// Direct parameter reconstruction.

namespace {

std::vector<cplx> moving_average(const std::vector<cplx>& d, int width) {
  const int n = static_cast<int>(d.size());
  const int half = width / 2;
  std::vector<cplx> out(d.size());
  for (int i = 0; i < n; ++i) {
    cplx acc = 0.0;
    int cnt = 0;
    for (int j = std::max(0, i - half); j <= std::min(n - 1, i + half); ++j) {
      acc += d[j];
      ++cnt;
    }
    out[i] = acc / static_cast<double>(cnt);
  }
  return out;
}

// Unit phase that maximizes the real-part energy of e^{-i theta} d.
double align_phase(const std::vector<cplx>& d) {
  cplx s = 0.0;
  for (const cplx& v : d) s += v * v;
  return 0.5 * std::arg(s);
}

struct Peak {
  double t;
  cplx value;
  size_t index;
};

// Parabolic refinement of the modulus peak; the value is interpolated at the
// refined location from the 3-point fit of the aligned real part.
Peak find_peak(const std::vector<double>& t, const std::vector<cplx>& d) {
  size_t im = 0;
  for (size_t i = 1; i < d.size(); ++i)
    if (std::abs(d[i]) > std::abs(d[im])) im = i;
  Peak pk{t[im], d[im], im};
  if (im == 0 || im + 1 == d.size()) return pk;
  auto refine = [&](auto value_of) {
    const double y0 = value_of(d[im - 1]), y1 = value_of(d[im]), y2 = value_of(d[im + 1]);
    const double denom = y0 - 2.0 * y1 + y2;
    if (denom == 0.0) return std::pair<double, double>(0.0, y1);
    const double delta = 0.5 * (y0 - y2) / denom;
    return std::pair<double, double>(delta, y1 - 0.25 * (y0 - y2) * delta);
  };
  const double theta = align_phase(d);
  const cplx rot = std::polar(1.0, -theta);
  auto re_of = [rot](const cplx& v) { return (rot * v).real(); };
  auto im_of = [rot](const cplx& v) { return (rot * v).imag(); };
  auto [delta, re_peak] = refine(re_of);
  if (std::abs(delta) > 1.0) return pk;
  const double h = 0.5 * (t[im + 1] - t[im - 1]);
  pk.t = t[im] + delta * h;
  // Imaginary residual interpolated linearly; it is near-constant in phase.
  const double im_mid = im_of(d[im]);
  pk.value = std::conj(rot) * cplx(re_peak, im_mid);
  return pk;
}

}  // namespace

AiryParams direct_fit(const SurfaceTrace& trace) {
  const std::vector<double>& t = trace.x;
  if (t.size() < 8) throw ValidationError("direct_fit: too few samples");
  std::vector<cplx> d = trace.d;

  // Low-pass when the high-frequency content suggests noisy data.
  const std::vector<cplx> smooth = moving_average(d, 5);
  std::vector<cplx> resid(d.size());
  for (size_t i = 0; i < d.size(); ++i) resid[i] = d[i] - smooth[i];
  const double noise_level = l2_norm(resid) / std::max(l2_norm(d), 1e-300);
  if (noise_level > 0.05) d = smooth;

  const Peak pk = find_peak(t, d);
  const double theta = align_phase(d);
  const cplx rot = std::polar(1.0, -theta);

  // First two zero crossings of the aligned real part beyond the peak.
  std::vector<double> crossings;
  double prev = (rot * d[pk.index]).real();
  for (size_t i = pk.index + 1; i < d.size() && crossings.size() < 2; ++i) {
    const double cur = (rot * d[i]).real();
    if (cur == 0.0) {
      crossings.push_back(t[i]);
    } else if ((cur < 0.0) != (prev < 0.0)) {
      crossings.push_back(t[i - 1] + (t[i] - t[i - 1]) * prev / (prev - cur));
    }
    prev = cur;
  }
  if (crossings.size() < 2)
    throw ValidationError("direct_fit: insufficient window (peak and two zero "
                          "crossings must be in view)");

  static const std::vector<double> zeros = airy_first_zeros(2);
  static const AiryMax ai_max = airy_global_max();
  const double y1 = zeros[0], y2 = zeros[1];
  const double x1 = crossings[0], x2 = crossings[1];
  AiryParams p;
  p.alpha = (y1 - y2) / (x2 - x1);
  p.beta = (y1 * x2 - y2 * x1) / (x2 - x1);
  p.z = pk.value / ai_max.value;
  if (!(p.alpha > 0.0)) throw ValidationError("direct_fit: non-positive alpha");
  return p;
}

// ---------------------------------------------------------------------------
// Levenberg-Marquardt with box projection.

namespace {

Vector4 solve4(Matrix4 a, Vector4 b) {
  // Gaussian elimination with partial pivoting.
  int idx[4] = {0, 1, 2, 3};
  for (int c = 0; c < 4; ++c) {
    int piv = c;
    for (int rr = c + 1; rr < 4; ++rr)
      if (std::abs(a[idx[rr]][c]) > std::abs(a[idx[piv]][c])) piv = rr;
    std::swap(idx[c], idx[piv]);
    const double pv = a[idx[c]][c];
    if (std::abs(pv) < 1e-300) throw NumericError("solve4: singular system");
    for (int rr = c + 1; rr < 4; ++rr) {
      const double w = a[idx[rr]][c] / pv;
      for (int cc = c; cc < 4; ++cc) a[idx[rr]][cc] -= w * a[idx[c]][cc];
      b[idx[rr]] -= w * b[idx[c]];
    }
  }
  Vector4 x{};
  for (int c = 3; c >= 0; --c) {
    double s = b[idx[c]];
    for (int cc = c + 1; cc < 4; ++cc) s -= a[idx[c]][cc] * x[cc];
    x[c] = s / a[idx[c]][c];
  }
  return x;
}

AiryParams apply_step(const AiryParams& p, const Vector4& dp) {
  AiryParams q = p;
  q.z += cplx(dp[0], dp[1]);
  q.alpha += dp[2];
  q.beta += dp[3];
  return q;
}

double norm4(const Vector4& v) {
  return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]);
}

AiryParams grid_init(const std::vector<double>& t, const std::vector<cplx>& d,
                     const FitBox& box) {
  // Coarse variable-projection search: z eliminated in closed form per (alpha, beta).
  const int na = 24, nb = 48;
  AiryParams best;
  double best_j = HUGE_VAL;
  for (int ia = 0; ia <= na; ++ia) {
    const double alpha = box.alpha_min + (box.alpha_max - box.alpha_min) * ia / na;
    for (int ib = 0; ib <= nb; ++ib) {
      const double beta = box.beta_min + (box.beta_max - box.beta_min) * ib / nb;
      AiryParams p;
      p.alpha = alpha;
      p.beta = beta;
      p.z = project_amplitude(alpha, beta, t, d);
      if (std::abs(p.z) == 0.0) continue;
      const double j = lsq_objective(p, t, d);
      if (j < best_j) {
        best_j = j;
        best = p;
      }
    }
  }
  return best;
}

FitReport gradient_descent(AiryParams p, const std::vector<double>& t,
                           const std::vector<cplx>& d, const FitBox& box,
                           const FitOptions& opt) {
  FitReport rep;
  double step = 1.0;
  double j = lsq_objective(p, t, d);
  int it = 0;
  for (; it < opt.max_iterations; ++it) {
    const Vector4 g = lsq_gradient(p, t, d);
    if (norm4(g) <= opt.gradient_tol) {
      rep.converged = true;
      break;
    }
    bool accepted = false;
    for (int back = 0; back < 60; ++back) {
      const Vector4 dp{-step * g[0], -step * g[1], -step * g[2], -step * g[3]};
      const AiryParams q = box.clamp(apply_step(p, dp));
      const double jq = lsq_objective(q, t, d);
      if (jq < j) {
        p = q;
        j = jq;
        step *= 2.0;
        accepted = true;
        break;
      }
      step *= 0.5;
      if (step * norm4(g) < opt.step_tol) break;
    }
    if (!accepted) {
      rep.converged = norm4(lsq_gradient(p, t, d)) <= 1e2 * opt.gradient_tol ||
                      step * norm4(lsq_gradient(p, t, d)) < opt.step_tol;
      break;
    }
  }
  rep.params = p;
  rep.iterations = it;
  rep.residual_l2 = std::sqrt(2.0 * j);
  rep.hessian_min_eigenvalue = symmetric_eigenvalues(lsq_hessian(p, t, d))[0];
  return rep;
}

}  // namespace

FitReport fit_least_squares(const SurfaceTrace& trace, const FitBox& box,
                            std::optional<AiryParams> init, const FitOptions& options) {
  const std::vector<double>& t = trace.x;
  const std::vector<cplx>& d = trace.d;
  if (t.size() < 10) throw ValidationError("fit_least_squares: need >= 10 samples");
  if (!(box.alpha_min > 0.0) || box.alpha_max <= box.alpha_min ||
      box.beta_max <= box.beta_min || !(box.z_max > 0.0))
    throw ValidationError("fit_least_squares: empty box");

  AiryParams p;
  if (init) {
    p = box.clamp(*init);
  } else {
    try {
      p = box.clamp(direct_fit(trace));
    } catch (const ValidationError&) {
      p = grid_init(t, d, box);
    }
    if (!(std::abs(p.z) > 0.0)) p = grid_init(t, d, box);
  }

  if (options.method == FitOptions::Method::gradient_descent)
    return gradient_descent(p, t, d, box, options);

  FitReport rep;
  double lambda = 1e-3;
  double j = lsq_objective(p, t, d);
  int it = 0;
  for (; it < options.max_iterations; ++it) {
    const Vector4 g = lsq_gradient(p, t, d);
    if (norm4(g) <= options.gradient_tol) {
      rep.converged = true;
      break;
    }
    const Matrix4 gn = lsq_gauss_newton(p, t, d);
    bool accepted = false;
    for (int tries = 0; tries < 40; ++tries) {
      Matrix4 a = gn;
      for (int q = 0; q < 4; ++q) a[q][q] += lambda * std::max(gn[q][q], 1e-12);
      Vector4 dp;
      try {
        dp = solve4(a, {-g[0], -g[1], -g[2], -g[3]});
      } catch (const NumericError&) {
        lambda *= 10.0;
        continue;
      }
      const AiryParams q = box.clamp(apply_step(p, dp));
      const double jq = lsq_objective(q, t, d);
      if (jq <= j) {
        const double moved = std::abs(q.z - p.z) + std::abs(q.alpha - p.alpha) +
                             std::abs(q.beta - p.beta);
        p = q;
        j = jq;
        lambda = std::max(lambda / 3.0, 1e-12);
        accepted = true;
        if (moved < options.step_tol) {
          rep.converged = true;
          it = it + 1;
        }
        break;
      }
      lambda *= 4.0;
      if (lambda > 1e12) break;
    }
    if (rep.converged) break;
    if (!accepted) {
      rep.converged = true;  // stationary within numerical resolution
      break;
    }
  }
  if (it >= options.max_iterations) rep.note = "iteration cap reached";
  rep.params = p;
  rep.iterations = it;
  rep.residual_l2 = std::sqrt(2.0 * j);
  rep.hessian_min_eigenvalue = symmetric_eigenvalues(lsq_hessian(p, t, d))[0];
  if (!rep.converged) rep.note = "did not converge; best iterate returned";
  return rep;
}

double lambda_resonant_point(const FitReport& report) {
  if (!report.converged)
    throw ValidationError("lambda_resonant_point: fit did not converge");
  if (!(report.params.alpha > 0.0))
    throw ValidationError("lambda_resonant_point: invalid fit (alpha <= 0)");
  return report.params.beta / report.params.alpha;
}

}  // namespace wg
