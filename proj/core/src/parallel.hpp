#pragma once

#include <cstdint>

#include "blocktrain/tensor.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace blocktrain::detail {

// Splits [0, n) across the configured worker count. Each index is handled by
// exactly one thread, so any per-element accumulation keeps its serial order.
template <class Fn>
void parallel_for(std::int64_t n, Fn&& fn) {
#ifdef _OPENMP
  const int threads = num_threads();
  if (threads > 1 && n > 1) {
#pragma omp parallel for schedule(static) num_threads(threads)
    for (std::int64_t i = 0; i < n; ++i) {
      fn(i);
    }
    return;
  }
#endif
  for (std::int64_t i = 0; i < n; ++i) {
    fn(i);
  }
}

}  // namespace blocktrain::detail
