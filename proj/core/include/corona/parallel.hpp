#pragma once

#include <functional>

namespace corona {

/// Runs fn(i) for i in [0, n) on up to `threads` workers over statically
/// partitioned, disjoint index ranges. Each index writes only its own slot
/// in caller-owned storage, so results are bit-identical for every thread
/// count. threads <= 1 runs inline.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

}  // namespace corona
