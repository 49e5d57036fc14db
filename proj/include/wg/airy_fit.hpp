#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "wg/trace.hpp"

namespace wg {

/// Parameters of the three-parameter model d(t) = z * Ai(beta - alpha t);
/// the resonant point is x* = beta / alpha.
struct AiryParams {
  cplx z = 1.0;
  double alpha = 1.0;  // > 0, inverse-length scale
  double beta = 0.0;   // dimensionless shift
  double x_star() const { return beta / alpha; }
};

/// Search box |z| <= z_max, alpha in (alpha_min, alpha_max), beta in (...).
struct FitBox {
  double z_max = 100.0;
  double alpha_min = 1e-3;
  double alpha_max = 100.0;
  double beta_min = -1e3;
  double beta_max = 1e3;
  bool contains(const AiryParams& p) const;
  AiryParams clamp(const AiryParams& p) const;
};

using Matrix4 = std::array<std::array<double, 4>, 4>;
using Vector4 = std::array<double, 4>;

struct FitReport {
  AiryParams params;
  double residual_l2 = 0.0;  // sqrt(2 J) at the solution
  int iterations = 0;
  bool converged = false;
  double hessian_min_eigenvalue = 0.0;  // convexity diagnostic
  std::string note;
};

struct FitOptions {
  enum class Method { levenberg_marquardt, gradient_descent };
  Method method = Method::levenberg_marquardt;
  int max_iterations = 500;
  double gradient_tol = 1e-10;
  double step_tol = 1e-12;
};

/// z * Ai(beta - alpha t).
cplx model_eval(const AiryParams& p, double t);
std::vector<cplx> model_eval(const AiryParams& p, const std::vector<double>& t);

/// J_d(p) = 1/(2n) sum |z Ai(beta - alpha t_i) - d_i|^2.
double lsq_objective(const AiryParams& p, const std::vector<double>& t,
                     const std::vector<cplx>& d);

/// Analytic gradient over (Re z, Im z, alpha, beta) with the uniform 1/n weight.
Vector4 lsq_gradient(const AiryParams& p, const std::vector<double>& t,
                     const std::vector<cplx>& d);

/// Analytic Hessian (Ai'' via the identity Ai''(x) = x Ai(x)).
Matrix4 lsq_hessian(const AiryParams& p, const std::vector<double>& t,
                    const std::vector<cplx>& d);

/// Gauss-Newton part of the Hessian (always PSD; equals the Hessian at an
/// exact fit).
Matrix4 lsq_gauss_newton(const AiryParams& p, const std::vector<double>& t,
                         const std::vector<cplx>& d);

/// Eigenvalues of a symmetric 4x4 (Jacobi iteration), ascending.
Vector4 symmetric_eigenvalues(Matrix4 m);

/// Closed-form parameter read-off: z from the peak over ||Ai||_inf, alpha and
/// beta from the first two zero crossings of the phase-aligned real part.
/// Applies a width-5 moving-average low-pass when the noise estimate exceeds
/// 5%. Throws ValidationError ("insufficient window") when the peak or two
/// crossings are not in view.
AiryParams direct_fit(const SurfaceTrace& trace);

/// Closed-form optimal z for fixed (alpha, beta).
cplx project_amplitude(double alpha, double beta, const std::vector<double>& t,
                       const std::vector<cplx>& d);

/// Box-projected Levenberg-Marquardt (or plain gradient descent) on J_d,
/// initialized from `init` or direct_fit (coarse variable-projection grid
/// search as a fallback). Non-convergence returns converged = false with the
/// best iterate rather than throwing.
FitReport fit_least_squares(const SurfaceTrace& trace, const FitBox& box,
                            std::optional<AiryParams> init = std::nullopt,
                            const FitOptions& options = {});

/// Resonant-point functional Lambda = beta_LS / alpha_LS.
/// Requires a converged report and alpha > 0.
double lambda_resonant_point(const FitReport& report);

}  // namespace wg
