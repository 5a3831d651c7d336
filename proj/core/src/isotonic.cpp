#include "wtg/isotonic.hpp"

#include <algorithm>
#include <cstddef>
#include <vector>

namespace wtg {

void isotonic_projection(std::span<double> values) {
  const std::size_t n = values.size();
  if (n < 2) return;

  // Block stack: each block holds (sum, count); its level is sum/count.
  std::vector<double> sums(n);
  std::vector<std::size_t> counts(n);
  std::size_t top = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sums[top] = values[i];
    counts[top] = 1;
    while (top > 0 &&
           sums[top - 1] * static_cast<double>(counts[top]) >
               sums[top] * static_cast<double>(counts[top - 1])) {
      sums[top - 1] += sums[top];
      counts[top - 1] += counts[top];
      --top;
    }
    ++top;
  }

  std::size_t i = 0;
  for (std::size_t b = 0; b < top; ++b) {
    const double level = sums[b] / static_cast<double>(counts[b]);
    for (std::size_t k = 0; k < counts[b]; ++k) values[i++] = level;
  }
}

void monotone_box_projection(std::span<double> values, double lo, double hi) {
  isotonic_projection(values);
  for (double& v : values) v = std::clamp(v, lo, hi);
}

}  // namespace wtg
