#pragma once

#include <functional>

namespace slantlab {

// Hard cap from the SLANTLAB_THREADS environment variable (0 = no cap).
int env_thread_cap();

// Runs body(i) for i in [0, count). requested == 0 means hardware
// concurrency; the environment cap always applies. Results must be written
// to per-index slots so the outcome is independent of the thread count.
// If several indices throw, the exception from the smallest index wins.
void parallel_for(long long count, int requested,
                  const std::function<void(long long)>& body);

}  // namespace slantlab
