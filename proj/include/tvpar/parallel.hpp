#pragma once

#include <cstddef>
#include <functional>

namespace tvpar {

/// Worker count: TVPAR_THREADS environment variable if set (>=1), otherwise
/// std::thread::hardware_concurrency().
std::size_t thread_count();

/// Runs fn over [0,n) split into contiguous blocks, one per worker.
/// fn(begin, end) must not touch state shared with other blocks; callers
/// write into preallocated per-index slots so results are schedule-independent.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace tvpar
