#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace cutplan {

/// Worker count: CUTPLAN_JOBS when set to a positive integer, else the
/// hardware concurrency (at least 1).
std::size_t default_jobs();

/// Calls body(i) for i in [0, count) on up to `jobs` threads. Results must be
/// written to per-index slots; the first exception is rethrown after join.
void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& body);

}  // namespace cutplan
