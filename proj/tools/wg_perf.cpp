// Timing comparison of the serial reference kernels against the OpenMP path.

#include <chrono>
#include <cstdio>

#include "wg/bench_configs.hpp"
#include "wg/forward.hpp"

using namespace wg;
namespace chrono = std::chrono;

namespace {

template <typename F>
double time_ms(F&& f) {
  const auto t0 = chrono::steady_clock::now();
  f();
  const auto t1 = chrono::steady_clock::now();
  return chrono::duration<double, std::milli>(t1 - t0).count();
}

void row(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-28s %10.1f ms %10.1f ms   x%.2f\n", name, serial_ms, parallel_ms,
              serial_ms / parallel_ms);
}

}  // namespace

int main() {
  std::printf("%-28s %13s %13s   %s\n", "kernel", "serial", "openmp", "speedup");

  {
    const Profile p = builtin_profile("h2");
    const SourceSpec spec = benchmark_source({6.0});
    const std::vector<double> xs = linspace(-8.0, 8.0, 4096);
    SurfaceTrace a, b;
    const double s = time_ms([&] {
      a = synthesize_surface(p, 31.4, spec, xs,
                             {.n_max = -1, .exec = Exec::serial, .warn_source_side = false});
    });
    const double q = time_ms([&] {
      b = synthesize_surface(p, 31.4, spec, xs,
                             {.n_max = -1, .exec = Exec::parallel, .warn_source_side = false});
    });
    row("synthesize_surface (4096)", s, q);
    for (size_t i = 0; i < a.size(); ++i)
      if (a.d[i] != b.d[i]) {
        std::printf("MISMATCH at %zu\n", i);
        return 1;
      }
  }

  {
    BenchmarkCase c = benchmark_case("h3");
    ReconstructionResult ra, rb;
    const double s = time_ms([&] { ra = run_case(c, 0.0, 0, Exec::serial); });
    const double q = time_ms([&] { rb = run_case(c, 0.0, 0, Exec::parallel); });
    row("reconstruct h3 (20 freqs)", s, q);
    if (ra.points.size() != rb.points.size() ||
        ra.metrics->rel_sup_dense != rb.metrics->rel_sup_dense) {
      std::printf("MISMATCH in reconstruction\n");
      return 1;
    }
  }

  {
    std::vector<NoiseSweepRow> ra, rb;
    const double s = time_ms([&] { ra = noise_sweep_study(8, Exec::serial); });
    const double q = time_ms([&] { rb = noise_sweep_study(8, Exec::parallel); });
    row("noise sweep (8 seeds)", s, q);
    for (size_t i = 0; i < ra.size(); ++i)
      if (ra[i].ls_t3 != rb[i].ls_t3) {
        std::printf("MISMATCH in sweep\n");
        return 1;
      }
  }

  std::printf("parallel results identical to the serial reference\n");
  return 0;
}
