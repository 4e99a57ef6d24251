#ifndef PF_PARALLEL_HPP
#define PF_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace pf {

/// Worker count: PF_NUM_THREADS when set and positive, else hardware concurrency.
unsigned thread_budget();

/// Runs body(i) for i in [0, count). Exceptions from workers are rethrown
/// (the first one wins).
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

} // namespace pf

#endif // PF_PARALLEL_HPP
