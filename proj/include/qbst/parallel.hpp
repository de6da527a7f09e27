#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

namespace qbst {

// Every kernel that sweeps independent min-cut problems accepts an
// Execution tag. The serial path is the reference implementation; the
// parallel path must produce bit-identical results.
enum class Execution { serial, parallel };

/// Runs body(i) for i in [0, count). Exceptions thrown inside the parallel
/// region are captured and the first one is rethrown after the loop.
template <class Body>
void for_each_index(Execution execution, std::size_t count, Body&& body) {
  if (execution == Execution::serial || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace qbst
