#pragma once

#include <cstddef>
#include <functional>

namespace harmvmd {

/// Thread count from HARMVMD_THREADS, or 1 when unset or malformed.
int default_thread_count();

/// Calls fn(i) for i in [0, count) on up to `threads` workers. Each index runs exactly
/// once; the first exception thrown by any task is rethrown after all workers join.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace harmvmd
