#pragma once

#include <cstddef>
#include <functional>

namespace fockzero {

/// Number of workers used by parallel loops. Honors FOCKZERO_THREADS when it
/// holds a positive integer, otherwise falls back to the hardware count.
std::size_t worker_count();

/// Runs body(i) for every i in [0, n). Indices are split into contiguous
/// blocks, one per worker; callers write results into pre-sized storage and
/// reduce afterwards in index order, so output never depends on scheduling.
/// The exception thrown for the lowest failing block is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace fockzero
