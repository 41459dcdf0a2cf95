#pragma once

#include <cstddef>
#include <functional>

namespace fwlbp {

// FWLBP_JOBS when set to a positive integer, else the logical core count.
unsigned DefaultJobs();

// Runs fn(i) for i in [0, n) on up to `jobs` threads (0 = DefaultJobs()).
// Work items must write to disjoint outputs. If any item throws, the
// exception of the lowest failing index is rethrown after all threads join.
void ParallelFor(std::size_t n, unsigned jobs,
                 const std::function<void(std::size_t)>& fn);

}  // namespace fwlbp
