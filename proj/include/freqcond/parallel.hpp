#pragma once

#include <cstdint>
#include <functional>

namespace freqcond {

// Worker cap: FREQCOND_THREADS when set (>= 1), hardware concurrency otherwise.
int thread_cap();

// Runs fn(begin, end, worker) over contiguous ranges covering [0, count).
// The partition depends on the worker count, so callers must reduce with
// operations whose outcome is partition-independent (keyed accumulation,
// per-index writes). Exceptions from workers are rethrown on the caller.
void parallel_ranges(
    std::uint64_t count,
    const std::function<void(std::uint64_t, std::uint64_t, int)>& fn);

}  // namespace freqcond
