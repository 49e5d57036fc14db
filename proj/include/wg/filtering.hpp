#pragma once

#include <vector>

#include "wg/modes.hpp"
#include "wg/trace.hpp"

namespace wg {

/// In-place complex FFT (inverse with invert = true, normalized by 1/n).
/// Radix-2 when the size is a power of two, otherwise a direct transform.
void fft(std::vector<cplx>& a, bool invert);

/// Remove spatial-frequency bands of half-width `W_j` around +-kappa_j from a
/// uniformly sampled trace. With no bands the input is returned bit-exactly.
/// Throws ValidationError ("resample required") for non-uniform sampling.
SurfaceTrace band_stop(const SurfaceTrace& trace, const std::vector<double>& kappas,
                       const std::vector<double>& half_widths);

/// Band-stop with the spec's defaults: half-width 0.15 * |k_N(x_ref)| around
/// each propagative wavenumber, x_ref the window center (the trace midpoint).
SurfaceTrace filter_resonant_component(const SurfaceTrace& trace, const ModeContext& ctx,
                                       const std::vector<double>& propagative_wavenumbers);

/// Same with an externally supplied half-width (used by the inversion, which
/// has no profile to evaluate k_N on).
SurfaceTrace filter_resonant_component(const SurfaceTrace& trace,
                                       const std::vector<double>& propagative_wavenumbers,
                                       double half_width);

/// Sub-trace on [x_max - R, x_max + R], R = r * eta^(-1/3), centered at the
/// arg-max of |d|; clamps at the trace ends with a warning flag in meta.
SurfaceTrace select_window(const SurfaceTrace& trace, double r, double eta);

}  // namespace wg
