#pragma once

#include <cstddef>
#include <functional>

namespace aoi {

/// Resolves a thread-count request: 0 means hardware concurrency.
unsigned resolve_threads(unsigned requested, std::size_t n_tasks);

/// Runs task(i) for i in [0, n) on up to `threads` workers. Tasks must write
/// only to their own output slot. The first exception thrown by any task is
/// rethrown after all workers have stopped.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& task);

}  // namespace aoi
