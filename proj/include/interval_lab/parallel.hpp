#pragma once

#include <cstddef>
#include <functional>

namespace interval_lab {

/// Worker count: INTERVAL_LAB_THREADS if set (>= 1), else hardware concurrency.
unsigned worker_count();

/// Runs fn(i) for i in [0, n). Each index is handled by exactly one worker;
/// callers write results into per-index slots so output is order-independent.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace interval_lab
