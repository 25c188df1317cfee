#pragma once

#include <cstddef>
#include <functional>

namespace xrt {

/// Worker count from XRT_THREADS (unset or 0 means hardware concurrency).
unsigned thread_count();

/// Runs body(i) for i in [0, n), split into contiguous blocks across
/// thread_count() threads. body must only write to disjoint state.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace xrt
