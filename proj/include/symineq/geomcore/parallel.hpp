#pragma once

#include <cstddef>
#include <functional>

namespace symineq
{
// Worker count from SYMINEQ_THREADS (default: hardware concurrency, at least 1).
int thread_count();

// Runs body(begin, end) over contiguous blocks of [0, n). Block boundaries
// depend only on n and `blocks`, never on the worker count.
void parallel_blocks(std::size_t n, std::size_t blocks, const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

// Calls body(i) for i in [0, n) on the worker pool.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace symineq
