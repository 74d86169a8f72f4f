#pragma once

#include <cstddef>
#include <functional>

namespace curveflux {

// Worker count: CURVEFLUX_THREADS if set (clamped to >= 1), else all cores.
int thread_budget();

// Runs fn(i) for every i in [0, n).  Indices are partitioned into contiguous
// blocks, one per worker; fn must write only to slot i of any shared output so
// the result is identical for every thread count.  The first exception thrown
// by a worker is rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace curveflux
