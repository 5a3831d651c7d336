#include "wtg/gradient.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

namespace wtg {

namespace {

void check_time(const TimeIndexedData& data, double t, const GradientOptions& options,
                const char* op) {
  if (options.allow_extrapolation) return;
  if (t < data.time_min() || t > data.time_max()) {
    fail(ErrorCode::time_out_of_range, op,
         "t = " + std::to_string(t) + " outside the observed time range");
  }
}

QuantileRep fitted(const TimeIndexedData& data, double t, double h,
                   const KernelSpec& kernel, const GradientOptions& options) {
  QuantileRep fit =
      local_frechet_estimate(data, t, h, kernel, options.sigma0_floor_factor);
  if (options.linearize_b) {
    fit = linearized(fit, *options.linearize_b);
  }
  return fit;
}

}  // namespace

GradientEstimate wtg_estimate(const TimeIndexedData& data, double t, double delta,
                              double h, const KernelSpec& kernel,
                              const GradientOptions& options) {
  if (!(delta > 0.0)) {
    fail(ErrorCode::invalid_argument, "wtg_estimate", "delta must be positive");
  }
  check_time(data, t, options, "wtg_estimate");

  QuantileRep ref = fitted(data, t, h, kernel, options);
  const int m = ref.size();
  std::vector<double> quotient(static_cast<std::size_t>(m));

  if (options.scheme == DifferenceScheme::forward) {
    check_time(data, t + delta, options, "wtg_estimate");
    const QuantileRep ahead = fitted(data, t + delta, h, kernel, options);
    for (int j = 0; j < m; ++j) {
      quotient[static_cast<std::size_t>(j)] = (ahead.value(j) - ref.value(j)) / delta;
    }
  } else {
    check_time(data, t + delta, options, "wtg_estimate");
    check_time(data, t - delta, options, "wtg_estimate");
    const QuantileRep ahead = fitted(data, t + delta, h, kernel, options);
    const QuantileRep behind = fitted(data, t - delta, h, kernel, options);
    for (int j = 0; j < m; ++j) {
      quotient[static_cast<std::size_t>(j)] =
          (ahead.value(j) - behind.value(j)) / (2.0 * delta);
    }
  }

  TangentVector vector(ref.grid(), std::move(quotient));
  return GradientEstimate{t, delta, std::move(ref), std::move(vector)};
}

double eval_gradient_at_x(const GradientEstimate& g, double x) {
  if (!g.ref.support().contains(x)) {
    fail(ErrorCode::out_of_support, "eval_gradient_at_x", "x outside support");
  }
  const double u = cdf_from_quantile(g.ref)(x);
  return g.vector.eval(u);
}

double discrepancy(const GradientEstimate& est, const QuantileRep& truth_ref,
                   const TangentVector& truth_vec) {
  if (!(est.vector.grid() == truth_vec.grid()) || !(est.ref.grid() == truth_ref.grid())) {
    fail(ErrorCode::grid_mismatch, "discrepancy", "estimate/truth grids differ");
  }
  const auto a = est.vector.values();
  const auto b = truth_vec.values();
  double acc = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double d = a[j] - b[j];
    acc += d * d;
  }
  return acc / static_cast<double>(a.size());
}

std::vector<DeltaStability> delta_stability_scan(const TimeIndexedData& data, double t,
                                                 std::span<const double> deltas, double h,
                                                 const KernelSpec& kernel,
                                                 const GradientOptions& options) {
  if (deltas.size() < 2) {
    fail(ErrorCode::invalid_argument, "delta_stability_scan", "need at least two deltas");
  }
  if (!std::is_sorted(deltas.begin(), deltas.end())) {
    fail(ErrorCode::invalid_argument, "delta_stability_scan",
         "deltas must be sorted ascending");
  }

  std::vector<GradientEstimate> estimates;
  estimates.reserve(deltas.size());
  for (double delta : deltas) {
    estimates.push_back(wtg_estimate(data, t, delta, h, kernel, options));
  }

  std::vector<DeltaStability> scan;
  scan.reserve(deltas.size() - 1);
  for (std::size_t k = 0; k + 1 < estimates.size(); ++k) {
    // Consecutive estimates share the fitted reference at t, so the
    // transported comparison is the plain quantile-coordinate discrepancy.
    const double inst =
        discrepancy(estimates[k], estimates[k + 1].ref, estimates[k + 1].vector);
    scan.push_back(DeltaStability{deltas[k], inst});
  }
  return scan;
}

double choose_delta(std::span<const DeltaStability> scan, double rel_slack) {
  if (scan.empty()) {
    fail(ErrorCode::invalid_argument, "choose_delta", "empty scan");
  }
  double min_inst = scan[0].instability;
  for (const auto& entry : scan) min_inst = std::min(min_inst, entry.instability);
  for (const auto& entry : scan) {
    if (entry.instability <= min_inst * (1.0 + rel_slack)) return entry.delta;
  }
  return scan.front().delta;
}

std::vector<double> default_delta_grid(std::span<const double> times) {
  if (times.size() < 2) {
    fail(ErrorCode::invalid_argument, "default_delta_grid", "need at least two times");
  }
  const auto [lo, hi] = std::minmax_element(times.begin(), times.end());
  const double base = (*hi - *lo) / static_cast<double>(times.size() - 1);
  return {1e-3 * base, 1e-2 * base, 1e-1 * base, base};
}

const char* to_string(RankTrend trend) {
  switch (trend) {
    case RankTrend::rising: return "rising";
    case RankTrend::falling: return "falling";
    case RankTrend::stationary: return "stationary";
  }
  return "unknown";
}

std::vector<RankTrend> rank_dynamics(std::span<const TrajectoryPoint> trajectory,
                                     std::span<const GradientEstimate> gradients,
                                     double dead_band_scale) {
  if (trajectory.size() != gradients.size()) {
    fail(ErrorCode::length_mismatch, "rank_dynamics",
         "trajectory and gradient counts differ");
  }
  if (trajectory.size() < 2) {
    fail(ErrorCode::length_mismatch, "rank_dynamics", "need at least two samples");
  }
  for (std::size_t i = 0; i < trajectory.size(); ++i) {
    if (std::abs(trajectory[i].t - gradients[i].t) > 1e-12) {
      fail(ErrorCode::length_mismatch, "rank_dynamics",
           "trajectory times do not match gradient times");
    }
  }

  const std::size_t n = trajectory.size();
  const double dead_band =
      dead_band_scale * gradients[0].ref.support().width();

  std::vector<RankTrend> trends(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = (i == 0) ? 0 : i - 1;
    const std::size_t hi = (i + 1 == n) ? i : i + 1;
    const double dt = trajectory[hi].t - trajectory[lo].t;
    if (!(dt > 0.0)) {
      fail(ErrorCode::invalid_argument, "rank_dynamics",
           "trajectory times must be strictly increasing");
    }
    const double g_dot = (trajectory[hi].value - trajectory[lo].value) / dt;
    const double tau = eval_gradient_at_x(gradients[i], trajectory[i].value);
    const double gap = g_dot - tau;
    trends[i] = gap > dead_band    ? RankTrend::rising
                : gap < -dead_band ? RankTrend::falling
                                   : RankTrend::stationary;
  }
  return trends;
}

}  // namespace wtg
