#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace focklab {

// Global worker-count knob for the internal parallel loops. 0 = hardware
// concurrency. Results never depend on the thread count: every parallel_for
// writes to disjoint slots and reductions run in a fixed order afterwards.
int max_threads();
void set_max_threads(int n);

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

// Pairwise (tree) summation; deterministic for a fixed element order.
double pairwise_sum(std::span<const double> xs);

}  // namespace focklab
