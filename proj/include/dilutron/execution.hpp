#pragma once

#include <cstddef>
#include <exception>
#include <vector>

namespace dilutron {

// Selects between the OpenMP kernel and the serial reference loop. Both
// produce identical results; the serial path exists for testing and
// benchmarking.
enum class Execution { kSerial, kParallel };

template <class Fn>
void for_each_index(Execution exec, std::size_t count, Fn&& fn) {
  if (exec == Execution::kSerial) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(count);
  const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace dilutron
