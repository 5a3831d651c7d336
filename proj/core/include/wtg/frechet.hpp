#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wtg/kernel.hpp"
#include "wtg/quantile.hpp"

namespace wtg {

/// Observed pairs (T_i, P_i): times and estimated distributions on a shared
/// grid and support. Times need not be sorted or distinct. Regression needs
/// at least two distinct times inside the kernel window; ingestion of
/// shorter series is still well-formed.
struct TimeIndexedData {
  std::vector<double> times;
  std::vector<QuantileRep> dists;

  TimeIndexedData(std::vector<double> times_, std::vector<QuantileRep> dists_);

  int size() const { return static_cast<int>(times.size()); }
  const QuantileGrid& grid() const { return dists.front().grid(); }
  const SupportInterval& support() const { return dists.front().support(); }
  double time_min() const;
  double time_max() const;
};

/// Local-linear weights s(T_i, t) at evaluation time t with bandwidth h.
/// Satisfies (1/N) sum_i w_i = 1 and (1/N) sum_i w_i (T_i - t) = 0.
struct LocalWeights {
  double t;
  double h;
  std::vector<double> weights;
};

/// sigma0^2 below factor * h^4 is treated as a degenerate window. The
/// asymptotic theory assumes this never binds; for finite data it is the
/// "bandwidth too small at t" signal.
inline constexpr double kDefaultSigma0FloorFactor = 1e-12;

/// Weights w_i = K_h(T_i - t) [k2 - k1 (T_i - t)] / sigma0^2 with
/// k_z = (1/N) sum K_h(T_i - t)(T_i - t)^z and sigma0^2 = k0 k2 - k1^2.
/// Throws degenerate_window when fewer than two distinct times fall in
/// (t - h, t + h) or sigma0^2 is below the floor.
LocalWeights local_linear_weights(std::span<const double> times, double t, double h,
                                  const KernelSpec& kernel,
                                  double sigma0_floor_factor = kDefaultSigma0FloorFactor);

/// Minimizer of (1/N) sum_i w_i d_W^2(P_i, p): the weighted average
/// quantile vector projected onto {nondecreasing, within support} (PAVA then
/// clip). Signed weights are expected; projection is what keeps the output
/// a valid distribution.
QuantileRep weighted_frechet_mean(const LocalWeights& w, const TimeIndexedData& data);

/// local_linear_weights followed by weighted_frechet_mean.
QuantileRep local_frechet_estimate(const TimeIndexedData& data, double t, double h,
                                   const KernelSpec& kernel,
                                   double sigma0_floor_factor = kDefaultSigma0FloorFactor);

struct CvOptions {
  std::uint64_t seed = 0;     // fold shuffling (k-fold only)
  int folds = 10;
  int loo_threshold = 30;     // leave-one-out when N <= this
  double sigma0_floor_factor = kDefaultSigma0FloorFactor;
};

struct CvResult {
  double bandwidth = 0.0;
  std::vector<double> objectives;        // per candidate, input order
  std::vector<int> degenerate_counts;    // penalized evaluation points per candidate
};

/// Cross-validated bandwidth: leave-one-out when N <= 30, otherwise seeded
/// 10-fold. Degenerate evaluation points contribute a penalty of
/// diam(support)^2. Ties break to the smallest candidate. Throws
/// no_admissible_bandwidth when every candidate degenerates everywhere.
CvResult cv_bandwidth(const TimeIndexedData& data, std::span<const double> candidates,
                      const KernelSpec& kernel, const CvOptions& options = {});

/// Default candidate grid: log-spaced from 1.5 x (median gap between sorted
/// times) to (time range)/2.
std::vector<double> default_bandwidth_grid(std::span<const double> times, int count = 12);

}  // namespace wtg
