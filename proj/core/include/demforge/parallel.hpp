#pragma once

#include <cstddef>
#include <functional>

namespace demforge {

/// Number of worker threads used by parallel_for. Resolution order:
/// explicit set_thread_count() call, then the DEMFORGE_THREADS environment
/// variable, then hardware concurrency. 0 means "auto".
int thread_count();
void set_thread_count(int n);

/// Runs body(begin, end) over disjoint contiguous chunks of [0, n).
/// Chunk boundaries depend only on n and the thread count. Callers must
/// only write state owned by the indices they receive; under that contract
/// results are bitwise independent of the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace demforge
