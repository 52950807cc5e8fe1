#ifndef JACOFRAME_PARALLEL_HPP
#define JACOFRAME_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace jacoframe {

/// Worker count for internal loops: hardware concurrency, capped by the
/// JACOFRAME_THREADS environment variable when it holds a positive integer.
int max_threads();

/// Runs body(i) for i in [0, count). Work items are claimed dynamically, so
/// body must write only to storage owned by item i; results are then
/// independent of the thread count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

} // namespace jacoframe

#endif // JACOFRAME_PARALLEL_HPP
