#pragma once

#include <exception>

namespace wg {

/// Execution policy for the data-parallel kernels. The parallel path is
/// OpenMP; results are identical to the serial reference (per-item work is
/// independent, reductions stay single-threaded).
enum class Exec { serial, parallel };

/// Run body(i) for i in [0, n), honoring the policy. An exception thrown by
/// any item is captured and rethrown after the loop (exceptions must not
/// unwind through an OpenMP region).
template <typename Body>
void parallel_for(Exec exec, long n, const Body& body) {
  if (exec == Exec::parallel) {
    std::exception_ptr first;
#pragma omp parallel for schedule(dynamic, 16) shared(first)
    for (long i = 0; i < n; ++i) {
      try {
        body(i);
      } catch (...) {
#pragma omp critical(wg_parallel_for_error)
        if (!first) first = std::current_exception();
      }
    }
    if (first) std::rethrow_exception(first);
  } else {
    for (long i = 0; i < n; ++i) body(i);
  }
}

}  // namespace wg
