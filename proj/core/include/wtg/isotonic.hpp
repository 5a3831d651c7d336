#pragma once

#include <span>

namespace wtg {

/// Exact L2 projection onto nondecreasing vectors, in place
/// (pool-adjacent-violators, O(n)).
void isotonic_projection(std::span<double> values);

/// Projection onto {nondecreasing vectors with entries in [lo, hi]}:
/// PAVA followed by clipping, which attains the constrained optimum.
void monotone_box_projection(std::span<double> values, double lo, double hi);

}  // namespace wtg
