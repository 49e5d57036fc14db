#include <cmath>

#include "doctest.h"
#include "wg/bench_configs.hpp"
#include "wg/forward.hpp"

using namespace wg;

TEST_SUITE("parallel") {

TEST_CASE("synthesis: OpenMP path is bitwise identical to the serial reference") {
  const Profile p = builtin_profile("h2");
  const SourceSpec spec = benchmark_source({6.0});
  const std::vector<double> xs = linspace(-8.0, 8.0, 512);
  SynthesisOptions serial{.n_max = -1, .exec = Exec::serial, .warn_source_side = false};
  SynthesisOptions parallel{.n_max = -1, .exec = Exec::parallel, .warn_source_side = false};
  const SurfaceTrace a = synthesize_surface(p, 31.4, spec, xs, serial);
  const SurfaceTrace b = synthesize_surface(p, 31.4, spec, xs, parallel);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) CHECK(a.d[i] == b.d[i]);
}

TEST_CASE("reconstruction: execution policy does not change the result") {
  BenchmarkCase c = benchmark_case("h3");
  c.samples = 1024;
  const ReconstructionResult serial = run_case(c, 0.0, 0, Exec::serial);
  const ReconstructionResult parallel = run_case(c, 0.0, 0, Exec::parallel);
  REQUIRE(serial.points.size() == parallel.points.size());
  for (size_t i = 0; i < serial.points.size(); ++i) {
    CHECK(serial.points[i].x_star == parallel.points[i].x_star);
    CHECK(serial.points[i].width == parallel.points[i].width);
  }
  REQUIRE(serial.metrics.has_value());
  REQUIRE(parallel.metrics.has_value());
  CHECK(serial.metrics->rel_sup_dense == parallel.metrics->rel_sup_dense);
}

}  // TEST_SUITE
