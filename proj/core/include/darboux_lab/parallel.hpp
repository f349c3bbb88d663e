#pragma once

#include <cstddef>
#include <functional>

namespace dlab {

/// Upper bound on worker threads used by parallel_for. Defaults to the
/// hardware concurrency; 1 disables threading.
void set_max_threads(unsigned n);
unsigned max_threads();

/// Reads DARBOUX_LAB_THREADS (if set and positive) into set_max_threads.
void configure_threads_from_env();

/// Calls body(i) for i in [0, n). Each index is visited exactly once; the
/// body must only write to per-index state. The first exception thrown by
/// any worker is rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace dlab
