#pragma once

#include <cmath>

#include "wtg/error.hpp"

namespace wtg {

/// Closed interval the distributions live on, in the units of the
/// observable (dollars, years, ...). Both endpoints finite, lo < hi.
struct SupportInterval {
  double lo;
  double hi;

  SupportInterval(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
      fail(ErrorCode::invalid_argument, "SupportInterval",
           "requires finite lo < hi");
    }
  }

  double width() const { return hi - lo; }
  bool contains(double x) const { return x >= lo && x <= hi; }
  double clamp(double x) const { return x < lo ? lo : (x > hi ? hi : x); }

  friend bool operator==(const SupportInterval&, const SupportInterval&) = default;
};

/// Midpoint grid u_j = (2j-1)/(2m), j = 1..m, on (0,1). Averaging over the
/// nodes is the midpoint rule for integrals du over (0,1).
class QuantileGrid {
 public:
  explicit QuantileGrid(int m) : m_(m) {
    if (m < 1) {
      fail(ErrorCode::invalid_argument, "QuantileGrid", "grid size must be >= 1");
    }
  }

  int size() const { return m_; }
  double step() const { return 1.0 / m_; }

  /// Node for 0-based index i.
  double node(int i) const { return (2.0 * i + 1.0) / (2.0 * m_); }

  friend bool operator==(const QuantileGrid&, const QuantileGrid&) = default;

 private:
  int m_;
};

}  // namespace wtg
