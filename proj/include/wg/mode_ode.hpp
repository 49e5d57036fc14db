#pragma once

#include "wg/modes.hpp"
#include "wg/source.hpp"
#include "wg/trace.hpp"

namespace wg {

/// Solve a complex tridiagonal system in place (Thomas algorithm).
/// lower/upper have size n-1. Throws NumericError on a vanishing pivot.
std::vector<cplx> tridiagonal_solve(std::vector<cplx> lower, std::vector<cplx> diag,
                                    std::vector<cplx> upper, std::vector<cplx> rhs);

/// Layer construction. Both use the linear ramp alpha(x) = k (|x| - start)+.
/// `additive_absorption` replaces k_n^2 by k_n^2 + i alpha (simple absorbing
/// layer; reflects at the interface like 1/k_n^3, bad for band-edge resonant
/// modes). `complex_stretching` maps d/dx -> (1/gamma) d/dx with
/// gamma = 1 + i alpha / k: reflectionless in the continuum limit.
enum class PmlKind { complex_stretching, additive_absorption };

struct ModeOdeOptions {
  double grid_step = 1e-3;
  double pml_start = 8.0;   // absorption ramps up for |x| beyond this
  double domain_half = 15.0;
  bool with_pml = true;
  PmlKind pml = PmlKind::complex_stretching;
};

/// Independent per-mode data source: second-order finite differences for
///   u_n'' + k_n^2(x) u_n = -g_n(x)
/// on [-domain_half, domain_half] with an absorbing layer beyond pml_start,
/// Dirichlet ends. Returns u_n sampled on the requested sub-domain as a
/// SurfaceTrace (no transverse factor).
SurfaceTrace mode_ode_oracle(const Profile& profile, double k, int n,
                             const SourceSpec& spec, Interval domain,
                             const ModeOdeOptions& options = {});

}  // namespace wg
