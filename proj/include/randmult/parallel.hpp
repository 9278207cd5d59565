#pragma once

#include <cstddef>
#include <functional>

namespace randmult {

// 0 restores the default: $RANDMULT_THREADS if set, else hardware concurrency.
void set_thread_count(unsigned n);
unsigned thread_count();

// Runs body(begin, end) over contiguous shards of [0, n). Shards are
// independent; callers reduce per-index results themselves so the outcome does
// not depend on the number of threads.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace randmult
