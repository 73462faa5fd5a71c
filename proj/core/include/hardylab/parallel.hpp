#pragma once

#include <cstddef>
#include <functional>

namespace hardylab {

// Worker cap. HA_LAB_THREADS limits it; 0 or unset means hardware concurrency.
std::size_t worker_count();

// Runs fn(i) for i in [0, n). Callers write results into slot i so the merged
// output is deterministic. Nested calls run serially. The first exception
// thrown by a worker is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace hardylab
