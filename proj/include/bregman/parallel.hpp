#pragma once

#include <cstddef>
#include <functional>

namespace bregman {

/// Worker count: hardware concurrency capped by the BREGMAN_BOUND_THREADS
/// environment variable (values < 1 mean single-threaded).
int worker_count();

/// Runs fn(begin, end) over a partition of [0, n) on worker_count() threads.
/// Chunks are contiguous and assigned by thread index, so callers can merge
/// per-chunk results deterministically.
void parallel_chunks(std::size_t n,
                     const std::function<void(std::size_t chunk_index,
                                              std::size_t begin, std::size_t end)>& fn);

/// Number of chunks parallel_chunks will use for n items.
std::size_t chunk_count(std::size_t n);

}  // namespace bregman
