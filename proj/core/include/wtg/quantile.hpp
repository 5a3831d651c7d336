#pragma once

#include <span>
#include <vector>

#include "wtg/support.hpp"

namespace wtg {

class CdfRep;

/// A distribution represented by its quantile function sampled on the shared
/// midpoint grid. This is the universal internal representation: every
/// Wasserstein-geometric operation reduces to arithmetic on these vectors.
///
/// Invariants: values nondecreasing, every value inside the support.
class QuantileRep {
 public:
  QuantileRep(QuantileGrid grid, std::vector<double> values, SupportInterval support);

  const QuantileGrid& grid() const { return grid_; }
  const SupportInterval& support() const { return support_; }
  std::span<const double> values() const { return values_; }
  double value(int i) const { return values_[static_cast<std::size_t>(i)]; }
  int size() const { return grid_.size(); }

  /// Quantile function at any u in (0,1): linear between grid nodes and
  /// constant beyond the first/last node.
  double quantile(double u) const;

  friend bool same_geometry(const QuantileRep& a, const QuantileRep& b) {
    return a.grid_ == b.grid_ && a.support_ == b.support_;
  }

 private:
  QuantileGrid grid_;
  SupportInterval support_;
  std::vector<double> values_;
};

/// Piecewise-linear right-continuous CDF on a strictly increasing knot grid:
/// 0 left of the first knot, linear between knots, 1 right of the last knot.
/// A jump at the first knot (0 -> values.front()) represents an atom there.
class CdfRep {
 public:
  CdfRep(std::vector<double> knots, std::vector<double> values, SupportInterval support);

  std::span<const double> knots() const { return knots_; }
  std::span<const double> values() const { return values_; }
  const SupportInterval& support() const { return support_; }

  double operator()(double x) const;

 private:
  std::vector<double> knots_;
  std::vector<double> values_;
  SupportInterval support_;
};

enum class OutOfSupportPolicy {
  reject,  // throw value_outside_support
  clip,    // clamp offending sample values to the support
};

/// Order-statistic quantile estimate from a raw sample: the value at node
/// u_j is X_(ceil(u_j * n)).
QuantileRep empirical_quantiles(std::span<const double> sample, const QuantileGrid& grid,
                                const SupportInterval& support,
                                OutOfSupportPolicy policy = OutOfSupportPolicy::reject);

/// Right-continuous inversion F(x) = sup{u : Q(u) <= x} realized on the
/// grid. Flat quantile stretches become steep CDF ramps one resolution cell
/// wide; strictly increasing stretches invert exactly at the nodes.
CdfRep cdf_from_quantile(const QuantileRep& q);

/// Left-continuous generalized inverse Q(u) = inf{x : F(x) >= u} sampled at
/// the grid nodes. Plateau ties break to the left endpoint.
QuantileRep quantile_from_cdf(const CdfRep& c, const QuantileGrid& grid);

/// Atomless variant: the CDF resampled onto an equidistant knot grid with
/// increment at most b spanning the support, linearly interpolated. Moves
/// the distribution by at most b in Wasserstein distance.
CdfRep linearize_cdf(const QuantileRep& q, double b);

/// Convenience round trip through the linearized CDF.
QuantileRep linearized(const QuantileRep& q, double b);

}  // namespace wtg
