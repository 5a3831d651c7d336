#pragma once

#include <cstddef>
#include <functional>

namespace wtg {

unsigned default_thread_count();

/// Runs fn(i) for every i in [0, count) across `threads` workers (0 = auto).
/// Work items must write to disjoint output slots; the static strided
/// schedule means results never depend on thread count.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace wtg
