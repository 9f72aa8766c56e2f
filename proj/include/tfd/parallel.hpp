#pragma once

#include <cstdint>
#include <exception>

#include "tfd/exec.hpp"

namespace tfd {

/// Runs fn(i) for i in [0, count) on an OpenMP team (or inline for
/// Exec::serial). The first exception thrown by any iteration is rethrown on
/// the calling thread after the loop.
template <class Fn>
void parallel_for(std::int64_t count, Exec exec, Fn&& fn) {
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel && count > 1)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      fn(i);
    } catch (...) {
#pragma omp critical(tfd_parallel_for_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace tfd
