#pragma once

#include <span>
#include <vector>

#include "wtg/quantile.hpp"

namespace wtg {

/// Element of the tangent space at a reference distribution, stored in
/// quantile coordinates: entry j is g(Q_ref(u_j)) for the physical tangent
/// function g. In these coordinates inner products are flat grid averages
/// and parallel transport leaves the data untouched.
class TangentVector {
 public:
  TangentVector(QuantileGrid grid, std::vector<double> values);

  const QuantileGrid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  double value(int i) const { return values_[static_cast<std::size_t>(i)]; }
  int size() const { return grid_.size(); }

  /// Linear interpolation in u, constant beyond the first/last node.
  double eval(double u) const;

 private:
  QuantileGrid grid_;
  std::vector<double> values_;
};

/// L2 distance between quantile functions under the midpoint rule:
/// sqrt((1/m) sum_j (q1_j - q2_j)^2).
double wasserstein_distance(const QuantileRep& a, const QuantileRep& b);

/// Optimal transport map T = F_to^{-1} o F_from evaluated at x.
double transport_map_eval(const QuantileRep& from, const QuantileRep& to, double x);

/// Log map: T_{ref -> target} - id in quantile coordinates, i.e. the
/// per-node difference of quantile values.
TangentVector log_map(const QuantileRep& ref, const QuantileRep& target);

/// Exp map: pushforward of ref under (g + id). The candidate ref + v is
/// clipped to the support and, when non-monotone, sorted ascending
/// (monotone rearrangement), which is the quantile function of the
/// pushforward measure.
QuantileRep exp_map(const QuantileRep& ref, const TangentVector& v);

/// Parallel transport g -> g o F_from^{-1} o F_to. In quantile coordinates
/// this only re-associates the reference; the stored values are unchanged.
TangentVector parallel_transport(const TangentVector& v, const QuantileRep& from,
                                 const QuantileRep& to);

/// Grid-average inner product (1/m) sum_j v1_j v2_j at the reference.
double tangent_inner(const TangentVector& v1, const TangentVector& v2,
                     const QuantileRep& ref);

/// Norm induced by tangent_inner; equals wasserstein_distance(ref, p) for
/// v = log_map(ref, p).
double tangent_norm(const TangentVector& v, const QuantileRep& ref);

}  // namespace wtg
