#pragma once

#include <functional>
#include <thread>
#include <vector>

namespace freering {

/// Runs f(i) for i in [0, count) across worker threads. Callers store
/// results into slot i of a preallocated buffer, so aggregation order is
/// independent of scheduling. The BLAS pool is pinned to one thread for
/// the duration to avoid oversubscription.
void parallel_for_index(long count, const std::function<void(long)>& f);

}  // namespace freering
