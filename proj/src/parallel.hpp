#pragma once

#include <cstddef>
#include <functional>

namespace naifs {

// Worker count: NAIFS_WORKERS env var, else hardware concurrency, capped at 16.
int worker_count();

// Runs fn(i) for i in [0, n). Work items must be independent and write only
// to their own output slot; the partition is static so results do not depend
// on scheduling. Nested calls run serially. The first exception (by index)
// is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace naifs
