#pragma once

#include <cstdint>
#include <functional>

namespace wildsim {

// Runs fn(i) for i in [0, n). Work items must be independent; outputs must
// depend only on i, never on scheduling, so results are identical for any
// thread count. threads <= 0 selects the hardware concurrency.
void parallel_for(uint64_t n, int threads, const std::function<void(uint64_t)>& fn);

}  // namespace wildsim
