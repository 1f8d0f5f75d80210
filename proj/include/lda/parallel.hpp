#ifndef LDA_PARALLEL_HPP
#define LDA_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace lda {

/// Number of worker threads used by parallel_for: the LDA_THREADS environment
/// variable when set, otherwise hardware concurrency.
unsigned worker_count();

/// Runs fn(i) for i in [0, n). Work items must be independent; results should
/// be written to caller-owned slots indexed by i, which keeps outputs
/// identical for any worker count. Exceptions propagate to the caller.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn,
                  unsigned workers = 0);

}  // namespace lda

#endif
