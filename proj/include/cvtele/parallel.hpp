#pragma once

#include <cstddef>
#include <functional>

namespace cvtele {

// Worker count: min(hardware_concurrency, CVTELE_THREADS), at least 1.
int thread_budget();

// Runs fn(i) for i in [0, n). Work items must be independent; results should
// be written to preallocated slots indexed by i so output does not depend on
// the thread count. Exceptions from workers are rethrown on the caller.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace cvtele
