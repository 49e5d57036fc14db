#pragma once

#include <functional>

#include "wg/source.hpp"
#include "wg/trace.hpp"

namespace wg {

/// Black-box data source: boundary trace at frequency k for a source spec.
using TraceGenerator = std::function<SurfaceTrace(double k, const SourceSpec&)>;

struct BoundsEstimate {
  double h_min = 0.0;
  double h_max = 0.0;
  int mode = 1;                 // inferred mode index n
  double k_peak_thin = 0.0;     // scan peak excited from the thin region
  double k_peak_thick = 0.0;    // scan peak excited from the thick region
};

/// Width-bound calibration: scan k, detect explosion peaks of the trace norm
/// (local maxima above 5x the median) per source side; the larger peak
/// frequency gives h_min = n pi / k, the smaller gives h_max.
/// Throws NumericError when no peak clears the threshold.
BoundsEstimate calibrate_bounds(const TraceGenerator& generate,
                                const std::vector<double>& k_scan,
                                const SourceSpec& source_left,
                                const SourceSpec& source_right);

/// supp(h') calibration: at a frequency near n pi / h_min (or h_max), sweep a
/// boundary point source over `positions`; the trace norm explodes while the
/// source sits in the matching plateau. Returns the inner edge of the
/// explosion region (one boundary per sweep).
/// Throws NumericError ("support not detected") when the sweep stays flat.
double calibrate_support_edge(const TraceGenerator& generate, double k_fixed,
                              const std::vector<double>& positions);

/// Convenience: run both sweeps (k near n pi / h_min and n pi / h_max) and
/// return the support interval.
Interval calibrate_support(const TraceGenerator& generate, double k_thin, double k_thick,
                           const std::vector<double>& positions);

}  // namespace wg
