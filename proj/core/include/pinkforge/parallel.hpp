#pragma once

#include <cstddef>
#include <functional>

namespace pinkforge {

// Worker count: PINKFORGE_THREADS when set to a positive integer, else the hardware count.
unsigned thread_count();

// Runs body(begin, end) over a fixed split of [0, n) into contiguous chunks, one per worker.
// The split depends only on n and thread_count(); exceptions are rethrown after joining.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace pinkforge
