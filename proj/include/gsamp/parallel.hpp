#pragma once

#include <cstdint>
#include <exception>

#include <omp.h>

namespace gsamp {

/// Execution policy for the data-parallel kernels. `serial` is the reference
/// path the tests compare against; both produce identical results.
enum class Exec { serial, parallel };

/// Calls `body(i)` for i in [0, count). Iterations must be independent.
/// The first exception thrown by any iteration is rethrown after the loop.
template <class Body>
void for_each_index(std::int64_t count, Exec exec, Body&& body) {
  if (exec == Exec::serial || count < 2) {
    for (std::int64_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      body(i);
    } catch (...) {
#pragma omp critical(gsamp_for_each_index)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

inline int max_threads() { return omp_get_max_threads(); }

}  // namespace gsamp
