#pragma once

#include <cstddef>
#include <functional>

namespace sumlogic {

// Runs f(0..count-1) on up to `jobs` worker threads. Work is pulled from a
// shared counter; if several calls throw, the exception from the lowest index
// is rethrown after all workers finish, so failures are independent of the
// worker count.
void parallel_for(size_t count, int jobs, const std::function<void(size_t)>& f);

// SUMLOGIC_JOBS when set to a positive integer, otherwise the hardware
// concurrency (at least 1).
int default_jobs();

}  // namespace sumlogic
