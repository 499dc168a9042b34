#pragma once

#include <cstdint>
#include <exception>
#include <vector>

namespace fss {

// Thread count for an OpenMP kernel: jobs when positive, otherwise the
// runtime default (OMP_NUM_THREADS or the core count).
int resolve_jobs(int jobs);

// Runs body(i) for i in [0, n) on an OpenMP team. Exceptions cannot cross the
// parallel region, so each is captured and the one with the lowest index is
// rethrown afterwards; the error seen by callers matches the serial loop.
template <typename Body>
void parallel_for(std::int64_t n, int jobs, Body&& body) {
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n > 0 ? n : 0));
  const int threads = resolve_jobs(jobs);
#pragma omp parallel for schedule(dynamic, 64) num_threads(threads)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace fss
