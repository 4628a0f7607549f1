#ifndef OSK_PARALLEL_HPP
#define OSK_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace osk {

/// Worker count: OSK_THREADS when set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
unsigned thread_count();

/// Runs body(i) for i in [0, count) over contiguous blocks. Each index is
/// processed exactly once; results must not depend on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace osk

#endif  // OSK_PARALLEL_HPP
