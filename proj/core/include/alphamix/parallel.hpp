#pragma once

#include <cstddef>
#include <functional>

namespace alphamix {

/// Worker count: ALPHAMIX_THREADS if set to a positive integer, else the
/// hardware concurrency (at least 1).
std::size_t default_thread_count();

/// Runs body(i) for i in [0, n) on up to `threads` workers using static
/// contiguous chunks. Bodies must write only to their own output slots.
/// After all workers join, the exception from the lowest failing index is
/// rethrown, so error reporting does not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  std::size_t threads = default_thread_count());

}  // namespace alphamix
