#pragma once

#include <string>
#include <vector>

#include "wg/forward.hpp"
#include "wg/reconstruct.hpp"
#include "wg/source.hpp"

namespace wg {

/// Ready-to-run end-to-end setup for one bundled benchmark profile: the
/// frequency sweep, sources, branch geometry and the reference relative error
/// this toolkit is compared against.
struct BenchmarkCase {
  std::string id;
  Profile profile;
  FrequencyPlan plan;
  SourceSpec source;
  ReconstructOptions options;
  Interval measured_span{-8.0, 8.0};
  int samples = 2048;
  double reference_rel_error = 0.0;  // published reference, percent / 100
  double tolerance_rel_error = 0.02; // acceptance bound for this case
};

/// Benchmark setup for profile id "h1".."h7".
BenchmarkCase benchmark_case(const std::string& id);

/// Simulate the per-frequency traces of a case (noise optional).
std::vector<SurfaceTrace> simulate_case(const BenchmarkCase& c, double noise_amplitude = 0.0,
                                        std::uint64_t seed = 0, Exec exec = Exec::parallel);

/// Run the full reconstruction of a case and return the result with metrics.
ReconstructionResult run_case(const BenchmarkCase& c, double noise_amplitude = 0.0,
                              std::uint64_t seed = 0, Exec exec = Exec::parallel);

/// Noise-robustness study of the resonant-point functional on the synthetic
/// model (2+i) Ai(-2.8 + 1.4 t): median |Lambda + 2| over seeds, per noise
/// level, for the direct read-off and least squares on the three standard
/// sampling windows (t1 = 100 pts on [-6,-1], t2 = 100 on [-2,6],
/// t3 = 200 on [-6,6]).
struct NoiseSweepRow {
  double level = 0.0;
  double direct = 0.0;
  double ls_t1 = 0.0;
  double ls_t2 = 0.0;
  double ls_t3 = 0.0;
};
std::vector<NoiseSweepRow> noise_sweep_study(int seeds_per_level = 32,
                                             Exec exec = Exec::parallel);

}  // namespace wg
