#pragma once

#include <cstddef>
#include <functional>

namespace octoverify {

/// Resolves a requested worker count: values < 1 fall back to the
/// OCTOVERIFY_WORKERS environment variable, then to 1.
int resolve_workers(int requested);

/// Calls body(i) for every i in [0, count) using up to `workers` threads.
/// Indices are split into contiguous blocks; callers write results into
/// per-index slots so that output never depends on the worker count. The
/// first exception thrown by any body is rethrown after all threads join.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& body);

}  // namespace octoverify
