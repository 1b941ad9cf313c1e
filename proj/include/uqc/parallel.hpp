#pragma once

#include <cstddef>
#include <functional>

namespace uqc {

/// Number of worker threads used when a caller passes 0.
std::size_t default_thread_count();

/// Runs body(i) for every i in [0, count) on up to `threads` threads.
/// Indices are split into contiguous blocks; callers write results into
/// slot i so the outcome does not depend on scheduling. The first exception
/// thrown by any task is rethrown after all threads join.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& body);

}  // namespace uqc
