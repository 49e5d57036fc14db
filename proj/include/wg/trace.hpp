#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace wg {

using cplx = std::complex<double>;

/// Sampled one-side boundary data d_i = u(t_i, 0) at a single frequency,
/// with provenance carried as freeform JSON metadata.
struct SurfaceTrace {
  std::vector<double> x;  // strictly increasing abscissae
  std::vector<cplx> d;
  double k = 0.0;
  nlohmann::json meta;

  size_t size() const { return x.size(); }
  /// Uniform sampling step; throws if the grid is not uniform.
  double step() const;
  bool uniform(double rel_tol = 1e-9) const;
};

/// Normalized l2 norm sqrt((1/n) sum |d_i|^2).
double l2_norm(const std::vector<cplx>& d);
double l2_norm(const SurfaceTrace& t);

/// Trapezoid approximation of the L2(x range) norm of the trace.
double trace_l2_integral(const SurfaceTrace& t);

/// Add complex Gaussian noise scaled so the expected normalized-l2 noise norm
/// equals amplitude * ||d||_l2. Deterministic in `seed` (hand-rolled
/// Box-Muller over mt19937_64 so outputs are identical across platforms).
SurfaceTrace add_noise(const SurfaceTrace& trace, double amplitude, std::uint64_t seed);

/// CSV serialization, header "x,re,im", shortest round-trip number format.
void write_trace_csv(const SurfaceTrace& t, const std::string& path);
SurfaceTrace read_trace_csv(const std::string& path);
std::string trace_to_csv(const SurfaceTrace& t);
SurfaceTrace trace_from_csv(const std::string& text);

/// Sidecar metadata JSON (stores k and meta).
void write_trace_meta(const SurfaceTrace& t, const std::string& path);
void read_trace_meta(SurfaceTrace& t, const std::string& path);

/// Evenly spaced abscissae, endpoints included.
std::vector<double> linspace(double lo, double hi, int count);

}  // namespace wg
