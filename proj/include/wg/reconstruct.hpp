#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wg/airy_fit.hpp"
#include "wg/filtering.hpp"
#include "wg/parallel.hpp"
#include "wg/profile.hpp"
#include "wg/trace.hpp"

namespace wg {

/// Frequency sweep for one locally resonant mode N, K subset of (k_min, k_max)
/// with k_min = N pi / h_max, k_max = N pi / h_min.
struct FrequencyPlan {
  int mode = 1;
  double k_min = 0.0;
  double k_max = 0.0;
  std::vector<double> frequencies;  // strictly increasing, inside (k_min, k_max)
  void validate() const;
};

/// Parse the grid notation "a:b:l" (uniform discretization of [a, b] with l
/// points).
std::vector<double> parse_frequency_grid(const std::string& text);

/// One reconstruction branch: the trace sub-interval searched for the Airy
/// pattern produced by the source at `source_pos`.
struct BranchSpec {
  Interval region;
  double source_pos = 0.0;
};

struct ReconstructOptions {
  double r = 0.2;                  // window radius scale, R = r * eta^(-1/3)
  double eta = 8e-4;               // slow-variation scale for the window
  double window_factor = 1.0;      // data extracted on radius window_factor * R
  std::optional<FitBox> box;       // default: physics-derived box
  std::vector<BranchSpec> branches;  // default: one branch spanning the trace
  std::optional<double> anchor_left_width;   // default N pi / k_max
  std::optional<double> anchor_right_width;  // default N pi / k_min
  double merge_tol = 0.05;         // average recovered points closer than this
  Exec exec = Exec::parallel;
  FitOptions fit;
};

struct RecoveredPoint {
  double x_star = 0.0;
  double width = 0.0;  // N pi / k
  double k = 0.0;
  int branch = 0;
};

struct DroppedFrequency {
  double k = 0.0;
  int branch = 0;
  std::string reason;
};

struct ErrorMetrics {
  double sup_at_points = 0.0;      // max |h_app - h| over recovered points
  double sup_dense = 0.0;          // max over a dense grid of the support
  double rel_sup_at_points = 0.0;  // divided by h_max of the truth
  double rel_sup_dense = 0.0;
};

struct ReconstructionResult {
  std::vector<RecoveredPoint> points;  // sorted by x_star
  std::pair<double, double> anchor_left;   // (x0, width)
  std::pair<double, double> anchor_right;  // (x_{n+1}, width)
  std::vector<double> breakpoints_x;   // piecewise-linear h_app nodes
  std::vector<double> breakpoints_h;
  std::vector<FitReport> fits;         // per surviving (k, branch), same order as points
  std::vector<DroppedFrequency> dropped;
  std::optional<ErrorMetrics> metrics;

  double h_app(double x) const;  // piecewise-linear interpolant
};

/// Full per-frequency pipeline: band-stop filter -> window about the modulus
/// peak -> least-squares Airy fit (direct-fit init) -> resonant point; then
/// piecewise-linear width assembly with the support-end anchors.
/// Frequencies whose fit fails are dropped with a logged reason; fewer than 3
/// survivors raise NumericError.
ReconstructionResult reconstruct_profile(const FrequencyPlan& plan,
                                         const std::vector<SurfaceTrace>& traces,
                                         Interval support,
                                         const ReconstructOptions& options = {},
                                         const Profile* truth = nullptr);

/// Error metrics of an assembled reconstruction against ground truth.
ErrorMetrics error_metrics(const ReconstructionResult& result, const Profile& truth);

/// Result serialization (points, anchors, breakpoints, metrics, drop log).
std::string reconstruction_to_json(const ReconstructionResult& r);

/// Plot-ready CSV: x, h_app, and h_true when available.
std::string reconstruction_plot_csv(const ReconstructionResult& r, const Profile* truth,
                                    int samples = 400);

}  // namespace wg
