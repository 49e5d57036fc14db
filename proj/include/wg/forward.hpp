#pragma once

#include <optional>

#include "wg/modes.hpp"
#include "wg/parallel.hpp"
#include "wg/source.hpp"
#include "wg/trace.hpp"

namespace wg {

/// Langer coordinate of a locally resonant mode about one designated turning
/// point x*: positive on the cut-off side, negative on the oscillatory side,
/// zero at x*, strictly monotone. Magnitude (3/2 |integral of k_N|)^(2/3),
/// quadrature under u^2 = |x - x*| to absorb the square-root vanishing.
class TurningPointMap {
public:
  TurningPointMap(const ModeContext& ctx, double x_star);
  double operator()(double x) const;
  double x_star() const { return x_star_; }
  /// d(k_N^2)/dx at x* (> 0 when the oscillatory side is on the right).
  double slope() const { return slope_; }

private:
  const ModeContext* ctx_;
  double x_star_;
  double slope_;
};

/// xi about the designated resonant point of `ctx` (convenience wrapper).
double xi_map(const ModeContext& ctx, double x_star, double x);

/// Modal Green kernel G_n(x, s) for the matching classification branch.
/// For a locally resonant mode the turning point designated for the pair is
/// the resonant point nearest s on the side of x; with no turning point
/// between the points the propagative/evanescent form applies locally.
cplx green_kernel(const ModeContext& ctx, double x, double s);

struct SynthesisOptions {
  int n_max = -1;  // -1: all propagative/resonant modes plus 3 evanescent ones
  Exec exec = Exec::parallel;
  bool warn_source_side = true;  // warn when h(s) <= h(x*) for a resonant mode
};

/// Surface trace of the approximate wavefield
///   u(x, 0) = sum_n ( integral G_n(x, s) g_n(s) ds ) phi_n(x, 0),
/// with Dirac source terms collapsing to kernel evaluations.
/// Throws ForbiddenFrequencyError via mode classification.
SurfaceTrace synthesize_surface(const Profile& profile, double k, const SourceSpec& spec,
                                const std::vector<double>& abscissae,
                                const SynthesisOptions& options = {});

/// Single-mode synthesis u_n(x) (no transverse factor), for oracle comparisons.
std::vector<cplx> synthesize_mode(const ModeContext& ctx, const SourceSpec& spec,
                                  const std::vector<double>& abscissae,
                                  Exec exec = Exec::parallel);

}  // namespace wg
