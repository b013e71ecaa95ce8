#pragma once

#include <cstddef>
#include <functional>

namespace cumulant {

/// Worker cap from CUMULANT_KIT_THREADS (unset or 0: hardware concurrency).
std::size_t worker_count();

/// Runs body(i) for i in [0, count) on up to worker_count() threads.
/// Results must be written to per-index slots; the first exception thrown by
/// any body is rethrown after all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace cumulant
