#pragma once

#include <cstddef>
#include <functional>

namespace hardyliou {

/// Worker count: HARDYLIOU_THREADS if set (>= 1), otherwise hardware concurrency.
unsigned thread_cap();

/// Runs body(i) for i in [0, count). Each index must write only its own output
/// slot; results are then independent of the thread count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace hardyliou
