#pragma once

#include <cstddef>
#include <functional>

namespace minleg {

/// Worker count from MINLEG_WORKERS, else the available hardware parallelism.
int worker_count();

/// Calls fn(i) for every i in [0, count). Work is split across worker_count()
/// threads; callers write results into slot i so reductions can run in index
/// order afterwards. If any task throws, the exception from the
/// lowest failing index is rethrown after all tasks finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace minleg
