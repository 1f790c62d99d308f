#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

namespace sellab {

enum class Exec { serial, parallel };

/// Thread count for trial loops: the OpenMP default capped by the
/// SELECTION_LAB_THREADS environment variable when it is a positive integer.
int trial_threads();

/// Runs body(i) for i in [0, count). The parallel form distributes trials
/// over OpenMP threads; callers write results into slot i so that the
/// aggregate never depends on scheduling. The first exception thrown by any
/// trial is rethrown after the loop.
template <class F>
void run_trials(std::size_t count, Exec exec, F&& body) {
  std::exception_ptr err;
  std::mutex mu;
  const long n = static_cast<long>(count);
  const bool par = exec == Exec::parallel;
#pragma omp parallel for schedule(dynamic) num_threads(trial_threads()) if (par)
  for (long i = 0; i < n; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
}

}  // namespace sellab
