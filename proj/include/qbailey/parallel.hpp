#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "qbailey/series.hpp"

namespace qb {

// Worker count: QBAILEY_THREADS if set and positive, else the hardware
// concurrency (at least 1).
unsigned worker_count();

// Evaluates fn(0..count-1) on up to worker_count() threads and returns the
// results in index order. The first exception thrown by any task is rethrown.
std::vector<Series> parallel_map(std::size_t count, const std::function<Series(std::size_t)>& fn);

// Sum of parallel_map results, reduced in index order.
Series parallel_sum(const Truncation& trunc, std::size_t count, const std::function<Series(std::size_t)>& fn);

} // namespace qb
