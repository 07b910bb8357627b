#pragma once

#include <cstddef>
#include <functional>

namespace qamlab {

/// Worker count: hardware concurrency capped by QAMLAB_THREADS when set.
std::size_t thread_budget() noexcept;

/// Runs body(i) for i in [0, n) on up to `threads` workers. Each index runs exactly once;
/// callers merge results by index so the outcome does not depend on scheduling.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& body);

}  // namespace qamlab
