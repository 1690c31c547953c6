#pragma once

#include <cstddef>
#include <functional>

namespace finsleroid {

// Worker count: FINSLEROID_THREADS if set (>= 1), else the hardware concurrency.
unsigned worker_count();

// Calls fn(i) for i in [0, n) on up to worker_count() threads. Each index is
// handled exactly once; callers write into per-index slots and reduce in order,
// so results do not depend on the thread count. The first exception is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace finsleroid
