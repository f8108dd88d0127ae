#pragma once
#include <cstddef>
#include <functional>

namespace xyqpt {

/// Worker count: XYQPT_WORKERS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
int default_workers();

/// Runs fn(i) for i in [0, n) on up to `workers` threads (0 = default).
/// The first exception thrown by any task is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, int workers = 0);

} // namespace xyqpt
