#pragma once

#include <functional>

namespace vortexprop {

// Worker count resolution: explicit argument > VORTEXPROP_THREADS > hardware
// concurrency. Zero or negative requests fall through to the next source.
int resolve_thread_count(int requested = 0);

// Runs body(i) for i in [0, count) across workers. Iterations must be
// independent and write disjoint slots; the result is then deterministic
// regardless of the worker count.
void parallel_for(int count, int threads, const std::function<void(int)>& body);

}  // namespace vortexprop
