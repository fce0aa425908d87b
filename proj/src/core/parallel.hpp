#pragma once

#include <cstddef>
#include <functional>

namespace ranklab {

// Worker count for `tasks` independent jobs: hardware concurrency, capped
// by the RANKLAB_THREADS environment variable when set.
std::size_t worker_count(std::size_t tasks);

// Runs fn(0..n-1) across workers. Callers write results into preallocated
// slots indexed by task, so output never depends on scheduling. The first
// exception thrown by any task is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace ranklab
