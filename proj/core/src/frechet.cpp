#include "wtg/frechet.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <string>

#include "wtg/isotonic.hpp"
#include "wtg/geometry.hpp"
#include "wtg/rng.hpp"

namespace wtg {

TimeIndexedData::TimeIndexedData(std::vector<double> times_, std::vector<QuantileRep> dists_)
    : times(std::move(times_)), dists(std::move(dists_)) {
  if (times.size() != dists.size()) {
    fail(ErrorCode::length_mismatch, "TimeIndexedData", "times/dists size mismatch");
  }
  if (times.empty()) {
    fail(ErrorCode::invalid_argument, "TimeIndexedData", "no observations");
  }
  for (double t : times) {
    if (!std::isfinite(t)) {
      fail(ErrorCode::invalid_argument, "TimeIndexedData", "times must be finite");
    }
  }
  for (const QuantileRep& d : dists) {
    if (!same_geometry(d, dists.front())) {
      fail(ErrorCode::grid_mismatch, "TimeIndexedData",
           "all distributions must share one grid and support");
    }
  }
}

double TimeIndexedData::time_min() const {
  return *std::min_element(times.begin(), times.end());
}

double TimeIndexedData::time_max() const {
  return *std::max_element(times.begin(), times.end());
}

LocalWeights local_linear_weights(std::span<const double> times, double t, double h,
                                  const KernelSpec& kernel, double sigma0_floor_factor) {
  if (!(h > 0.0)) {
    fail(ErrorCode::invalid_argument, "local_linear_weights", "bandwidth must be positive");
  }
  const auto n = static_cast<double>(times.size());

  double k0 = 0.0, k1 = 0.0, k2 = 0.0;
  int in_window = 0;
  double first_in_window = 0.0;
  bool distinct = false;
  for (double s : times) {
    const double d = s - t;
    const double w = kernel.scaled(d, h);
    if (w > 0.0) {
      if (in_window == 0) {
        first_in_window = s;
      } else if (s != first_in_window) {
        distinct = true;
      }
      ++in_window;
    }
    k0 += w;
    k1 += w * d;
    k2 += w * d * d;
  }
  k0 /= n;
  k1 /= n;
  k2 /= n;

  const double sigma0_sq = k0 * k2 - k1 * k1;
  const double floor = sigma0_floor_factor * h * h * h * h;
  if (in_window < 2 || !distinct || !(sigma0_sq > floor)) {
    fail(ErrorCode::degenerate_window, "local_linear_weights",
         "window around t = " + std::to_string(t) + " has no usable spread (h = " +
             std::to_string(h) + ")");
  }

  LocalWeights result{t, h, std::vector<double>(times.size())};
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double d = times[i] - t;
    result.weights[i] = kernel.scaled(d, h) * (k2 - k1 * d) / sigma0_sq;
  }
  return result;
}

namespace {

// Shared core: weighted quantile average over a subset of the data followed
// by the monotone-box projection. weights[k] belongs to data.dists[subset[k]].
QuantileRep weighted_mean_over(const TimeIndexedData& data, std::span<const int> subset,
                               std::span<const double> weights) {
  const auto n = static_cast<double>(subset.size());
  const auto m = static_cast<std::size_t>(data.grid().size());

  std::vector<std::span<const double>> rows(subset.size());
  for (std::size_t k = 0; k < subset.size(); ++k) {
    rows[k] = data.dists[static_cast<std::size_t>(subset[k])].values();
  }

  double weight_sum = 0.0;
  for (double w : weights) weight_sum += w;

  std::vector<double> mean(m);
  if (std::abs(weight_sum / n - 1.0) <= 1e-9) {
    // Local-linear weights average to one; accumulating deviations from an
    // anchor distribution is then an exact rewrite of (1/N) sum w_i q_i that
    // makes constant data reproduce the common distribution bit for bit.
    std::size_t anchor = 0;
    while (anchor + 1 < weights.size() && weights[anchor] == 0.0) ++anchor;
    const auto anchor_values = rows[anchor];
    for (std::size_t j = 0; j < m; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < subset.size(); ++k) {
        if (weights[k] == 0.0) continue;
        acc += weights[k] * (rows[k][j] - anchor_values[j]);
      }
      mean[j] = anchor_values[j] + acc / n;
    }
  } else {
    for (std::size_t j = 0; j < m; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < subset.size(); ++k) {
        acc += weights[k] * rows[k][j];
      }
      mean[j] = acc / n;
    }
  }

  monotone_box_projection(mean, data.support().lo, data.support().hi);
  return QuantileRep(data.grid(), std::move(mean), data.support());
}

}  // namespace

QuantileRep weighted_frechet_mean(const LocalWeights& w, const TimeIndexedData& data) {
  if (w.weights.size() != data.dists.size()) {
    fail(ErrorCode::length_mismatch, "weighted_frechet_mean",
         "weights not aligned with data");
  }
  std::vector<int> all(data.dists.size());
  std::iota(all.begin(), all.end(), 0);
  return weighted_mean_over(data, all, w.weights);
}

QuantileRep local_frechet_estimate(const TimeIndexedData& data, double t, double h,
                                   const KernelSpec& kernel, double sigma0_floor_factor) {
  const LocalWeights w =
      local_linear_weights(data.times, t, h, kernel, sigma0_floor_factor);
  return weighted_frechet_mean(w, data);
}

namespace {

// CV objective for one candidate bandwidth: mean squared leave-out
// Wasserstein error; degenerate evaluation points cost diam(support)^2.
std::pair<double, int> cv_objective(const TimeIndexedData& data,
                                    const std::vector<int>& fold_of, double h,
                                    const KernelSpec& kernel, double floor_factor) {
  const int n = data.size();
  const double penalty = data.support().width() * data.support().width();
  double total = 0.0;
  int degenerate = 0;

  std::vector<double> rest_times;
  std::vector<int> rest_indices;
  for (int i = 0; i < n; ++i) {
    rest_times.clear();
    rest_indices.clear();
    for (int k = 0; k < n; ++k) {
      if (fold_of[static_cast<std::size_t>(k)] == fold_of[static_cast<std::size_t>(i)]) continue;
      rest_times.push_back(data.times[static_cast<std::size_t>(k)]);
      rest_indices.push_back(k);
    }
    try {
      const LocalWeights w = local_linear_weights(
          rest_times, data.times[static_cast<std::size_t>(i)], h, kernel, floor_factor);
      const QuantileRep fit = weighted_mean_over(data, rest_indices, w.weights);
      const double d = wasserstein_distance(fit, data.dists[static_cast<std::size_t>(i)]);
      total += d * d;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::degenerate_window) throw;
      total += penalty;
      ++degenerate;
    }
  }
  return {total / static_cast<double>(n), degenerate};
}

}  // namespace

CvResult cv_bandwidth(const TimeIndexedData& data, std::span<const double> candidates,
                      const KernelSpec& kernel, const CvOptions& options) {
  if (candidates.empty()) {
    fail(ErrorCode::invalid_argument, "cv_bandwidth", "candidate list is empty");
  }
  const int n = data.size();

  // Fold assignment: leave-one-out below the threshold, otherwise a seeded
  // shuffle chunked into near-equal folds.
  std::vector<int> fold_of(static_cast<std::size_t>(n));
  if (n <= options.loo_threshold) {
    std::iota(fold_of.begin(), fold_of.end(), 0);
  } else {
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    Rng rng = Rng::stream(options.seed, 0x6f6c64732d637631ULL);
    for (int i = n - 1; i > 0; --i) {
      const int j = rng.uniform_int(i + 1);
      std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
    }
    const int folds = std::max(2, std::min(options.folds, n));
    for (int pos = 0; pos < n; ++pos) {
      fold_of[static_cast<std::size_t>(order[static_cast<std::size_t>(pos)])] =
          pos % folds;
    }
  }

  CvResult result;
  result.objectives.reserve(candidates.size());
  result.degenerate_counts.reserve(candidates.size());
  double best = std::numeric_limits<double>::infinity();
  double best_h = 0.0;
  bool any_usable = false;
  for (double h : candidates) {
    const auto [objective, degenerate] =
        cv_objective(data, fold_of, h, kernel, options.sigma0_floor_factor);
    result.objectives.push_back(objective);
    result.degenerate_counts.push_back(degenerate);
    if (degenerate < n) any_usable = true;
    // Ties break to the smallest candidate regardless of input order.
    if (objective < best || (objective == best && h < best_h)) {
      best = objective;
      best_h = h;
    }
  }
  if (!any_usable) {
    fail(ErrorCode::no_admissible_bandwidth, "cv_bandwidth",
         "every candidate bandwidth degenerates at every evaluation point");
  }
  result.bandwidth = best_h;
  return result;
}

std::vector<double> default_bandwidth_grid(std::span<const double> times, int count) {
  if (times.size() < 3 || count < 1) {
    fail(ErrorCode::invalid_argument, "default_bandwidth_grid",
         "need >= 3 times and a positive count");
  }
  std::vector<double> sorted(times.begin(), times.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> gaps;
  gaps.reserve(sorted.size() - 1);
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    gaps.push_back(sorted[i] - sorted[i - 1]);
  }
  std::sort(gaps.begin(), gaps.end());
  const double median_gap = gaps[gaps.size() / 2];
  const double range = sorted.back() - sorted.front();
  if (!(range > 0.0)) {
    fail(ErrorCode::invalid_argument, "default_bandwidth_grid", "times are all equal");
  }

  double lo = 1.5 * median_gap;
  double hi = range / 2.0;
  if (!(lo > 0.0)) lo = range / static_cast<double>(sorted.size());
  if (lo >= hi) lo = hi / 4.0;

  std::vector<double> grid(static_cast<std::size_t>(count));
  if (count == 1) {
    grid[0] = std::sqrt(lo * hi);
    return grid;
  }
  const double log_lo = std::log(lo);
  const double log_hi = std::log(hi);
  for (int i = 0; i < count; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(count - 1);
    grid[static_cast<std::size_t>(i)] = std::exp(log_lo + f * (log_hi - log_lo));
  }
  return grid;
}

}  // namespace wtg
