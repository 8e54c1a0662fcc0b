#pragma once

#include <cstddef>
#include <functional>

namespace arcmusic {

/// Caps the number of worker threads used by parallel_for (0 = hardware default).
void set_max_threads(int n);
int max_threads();

/// Runs fn(i) for i in [0, count). Work is split into contiguous static chunks;
/// every index is computed independently, so results do not depend on the
/// thread count. Exceptions from workers are rethrown on the calling thread.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace arcmusic
