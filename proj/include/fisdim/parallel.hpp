#pragma once

#include <cstddef>
#include <functional>

namespace fisdim {

// Number of worker threads: hardware concurrency, capped by FISDIM_THREADS.
unsigned thread_count();

// Runs fn over [0, count) in contiguous chunks. Deterministic as long as fn
// writes only to slots derived from its own index range.
void parallel_for(std::size_t count, const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace fisdim
