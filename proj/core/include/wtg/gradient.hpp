#pragma once

#include <optional>
#include <span>
#include <vector>

#include "wtg/frechet.hpp"
#include "wtg/geometry.hpp"

namespace wtg {

enum class DifferenceScheme {
  forward,  // (Q(t + delta) - Q(t)) / delta, the estimator's definition
  central,  // (Q(t + delta) - Q(t - delta)) / (2 delta)
};

struct GradientOptions {
  DifferenceScheme scheme = DifferenceScheme::forward;
  /// When set, both fitted distributions are passed through the atomless
  /// linearization with this increment before differencing.
  std::optional<double> linearize_b{};
  /// Permit t or t +/- delta slightly outside [min T, max T]; the local
  /// regression still extrapolates as long as the kernel window sees data.
  bool allow_extrapolation = false;
  double sigma0_floor_factor = kDefaultSigma0FloorFactor;
};

/// Temporal gradient estimate at time t: the fitted distribution at t and
/// the difference-quotient tangent vector in quantile coordinates,
/// vector_j = (Q_{t+delta}(u_j) - Q_t(u_j)) / delta.
struct GradientEstimate {
  double t;
  double delta;
  QuantileRep ref;
  TangentVector vector;
};

GradientEstimate wtg_estimate(const TimeIndexedData& data, double t, double delta,
                              double h, const KernelSpec& kernel,
                              const GradientOptions& options = {});

/// Physical evaluation tau(x): interpolate u* = F_ref(x), then the tangent
/// values at u*.
double eval_gradient_at_x(const GradientEstimate& g, double x);

/// Squared grid-L2 difference of quantile-coordinate vectors. By the
/// quantile-coordinate identity this equals the squared norm of the
/// parallel-transported estimation error at the truth's reference.
double discrepancy(const GradientEstimate& est, const QuantileRep& truth_ref,
                   const TangentVector& truth_vec);

struct DeltaStability {
  double delta;
  double instability;  // discrepancy between this delta's and the next one's estimate
};

/// Instability of consecutive gradient estimates over an ascending ladder
/// of deltas, all at the same t and bandwidth. Returns one entry per
/// adjacent pair (the last delta has no successor).
std::vector<DeltaStability> delta_stability_scan(const TimeIndexedData& data, double t,
                                                 std::span<const double> deltas, double h,
                                                 const KernelSpec& kernel,
                                                 const GradientOptions& options = {});

/// Smallest delta whose instability is within rel_slack of the scan minimum.
double choose_delta(std::span<const DeltaStability> scan, double rel_slack = 0.10);

/// Default scan ladder {1, 1e-1, 1e-2, 1e-3} x (time range / (N - 1)),
/// ascending.
std::vector<double> default_delta_grid(std::span<const double> times);

enum class RankTrend { rising, falling, stationary };

struct TrajectoryPoint {
  double t;
  double value;
};

/// Classifies how the rank of a trajectory g(t) moves: the sign of
/// g'(t) - tau_t(g(t)) with a dead band of dead_band_scale * diam(support)
/// per unit time. g' is taken by central differences (one-sided at the
/// ends). Trajectory times must match the gradient estimates' times.
std::vector<RankTrend> rank_dynamics(std::span<const TrajectoryPoint> trajectory,
                                     std::span<const GradientEstimate> gradients,
                                     double dead_band_scale = 1e-6);

const char* to_string(RankTrend trend);

}  // namespace wtg
