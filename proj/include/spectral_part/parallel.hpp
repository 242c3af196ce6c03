#pragma once

#include <cstddef>
#include <functional>

namespace spectral_part {

/// Worker cap: SPECTRAL_PART_THREADS if set to a positive integer, else the
/// hardware concurrency (at least 1).
std::size_t max_threads();

/// Runs body(begin, end) over disjoint chunks of [0, n). Each index is
/// handled by exactly one call and bodies write disjoint outputs, so results
/// do not depend on the thread count. Runs inline below `min_parallel`.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body,
                  std::size_t min_parallel = 4096);

}  // namespace spectral_part
