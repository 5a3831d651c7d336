#include "wtg/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>

#include "wtg/parallel.hpp"
#include "wtg/rng.hpp"
#include "wtg/truncated_gaussian.hpp"

namespace wtg {

double distortion(double a, double x) {
  if (a == 0.0) {
    fail(ErrorCode::zero_frequency, "distortion", "frequency a must be nonzero");
  }
  return x - std::sin(a * x) / std::abs(a);
}

SimDataset generate_dataset(const SimConfig& cfg, int replicate) {
  if (cfg.n_dists < 3 || cfg.n_obs < 1 || !(cfg.delta > 0.0) || cfg.grid_m < 2) {
    fail(ErrorCode::invalid_argument, "generate_dataset", "invalid simulation config");
  }
  constexpr double pi = 3.14159265358979323846;
  const QuantileGrid grid(cfg.grid_m);
  const SupportInterval support(0.0, 1.0);

  Rng rng = Rng::stream(cfg.seed, static_cast<std::uint64_t>(replicate));

  std::vector<double> times(static_cast<std::size_t>(cfg.n_dists));
  std::vector<double> freqs(static_cast<std::size_t>(cfg.n_dists));
  std::vector<std::vector<double>> samples(static_cast<std::size_t>(cfg.n_dists));
  std::vector<QuantileRep> dists;
  dists.reserve(static_cast<std::size_t>(cfg.n_dists));

  for (int i = 0; i < cfg.n_dists; ++i) {
    const auto k = static_cast<std::size_t>(i);
    times[k] = rng.uniform01();
    // a_i uniform on {+-10 pi, ..., +-14 pi}.
    const int pick = rng.uniform_int(10);
    const double mag = (10 + pick % 5) * pi;
    freqs[k] = pick < 5 ? mag : -mag;

    const TruncatedGaussianParams target = flow_params(times[k]).dist;
    samples[k].resize(static_cast<std::size_t>(cfg.n_obs));
    for (int j = 0; j < cfg.n_obs; ++j) {
      // Inverse-CDF draw from the distorted distribution: the quantile of
      // D_a # nu is the exact composition D_a o Q_nu. The frequencies are
      // integer multiples of pi, so D_a maps [0,1] onto itself; the clamp
      // only removes rounding dust at the endpoints.
      const double u = rng.uniform01();
      samples[k][static_cast<std::size_t>(j)] =
          support.clamp(distortion(freqs[k], truncnorm_quantile(target, u)));
    }
    dists.push_back(empirical_quantiles(samples[k], grid, support,
                                        OutOfSupportPolicy::reject));
  }

  return SimDataset{TimeIndexedData(std::move(times), std::move(dists)),
                    std::move(freqs), std::move(samples)};
}

std::vector<double> ad_time_grid() {
  std::vector<double> grid(99);
  for (int k = 1; k <= 99; ++k) {
    grid[static_cast<std::size_t>(k - 1)] = static_cast<double>(k) / 100.0;
  }
  return grid;
}

double average_discrepancy(std::span<const GradientEstimate> estimates,
                           const QuantileGrid& grid) {
  if (estimates.empty()) {
    fail(ErrorCode::invalid_argument, "average_discrepancy", "no estimates given");
  }
  double total = 0.0;
  for (const GradientEstimate& est : estimates) {
    const FlowParams flow = flow_params(est.t);
    const QuantileRep truth_ref = truncnorm_rep(flow.dist, grid);
    std::vector<double> truth(static_cast<std::size_t>(grid.size()));
    for (int j = 0; j < grid.size(); ++j) {
      truth[static_cast<std::size_t>(j)] = truncnorm_wtg(flow, truth_ref.value(j));
    }
    total += discrepancy(est, truth_ref, TangentVector(grid, std::move(truth)));
  }
  return total / static_cast<double>(estimates.size());
}

namespace {

// Smallest bandwidth whose kernel window holds at least two distinct times
// at every evaluation point; below it the estimator does not exist there.
double min_admissible_bandwidth(std::span<const double> times,
                                std::span<const double> eval_points) {
  std::vector<double> distinct(times.begin(), times.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() < 2) {
    fail(ErrorCode::no_admissible_bandwidth, "min_admissible_bandwidth",
         "fewer than two distinct observation times");
  }
  double need = 0.0;
  for (double t : eval_points) {
    double d1 = std::numeric_limits<double>::infinity();
    double d2 = d1;
    for (double s : distinct) {
      const double d = std::abs(s - t);
      if (d < d1) {
        d2 = d1;
        d1 = d;
      } else if (d < d2) {
        d2 = d;
      }
    }
    need = std::max(need, d2);
  }
  return need;
}

}  // namespace

ReplicateResult run_replicate(const SimConfig& cfg, int replicate) {
  ReplicateResult result;
  try {
    const SimDataset dataset = generate_dataset(cfg, replicate);

    std::vector<double> candidates =
        cfg.h_candidates.empty() ? default_bandwidth_grid(dataset.data.times)
                                 : cfg.h_candidates;
    // The discrepancy summary needs an estimate at every node of the
    // evaluation grid (and its delta-shifted partner), so candidates whose
    // window cannot reach the data from some node are inadmissible.
    std::vector<double> eval_points = ad_time_grid();
    for (double t : ad_time_grid()) eval_points.push_back(t + cfg.delta);
    const double h_min =
        min_admissible_bandwidth(dataset.data.times, eval_points) * (1.0 + 1e-9);
    std::erase_if(candidates, [&](double h) { return h < h_min; });
    if (candidates.empty()) candidates.push_back(h_min * 1.05);

    CvOptions cv_options;
    cv_options.seed = cfg.seed ^ static_cast<std::uint64_t>(replicate);
    const KernelSpec kernel{};
    const CvResult cv = cv_bandwidth(dataset.data, candidates, kernel, cv_options);
    result.bandwidth = cv.bandwidth;

    GradientOptions options;
    options.allow_extrapolation = true;  // t + delta may pass max(T_i); the
                                         // kernel window still covers data
    std::vector<GradientEstimate> estimates;
    const std::vector<double> ts = ad_time_grid();
    estimates.reserve(ts.size());
    for (double t : ts) {
      estimates.push_back(
          wtg_estimate(dataset.data, t, cfg.delta, cv.bandwidth, kernel, options));
    }
    result.ad = average_discrepancy(estimates, dataset.data.grid());
  } catch (const std::exception& e) {
    result.failed = true;
    result.error = e.what();
  }
  return result;
}

double sample_quantile(std::vector<double> xs, double p) {
  if (xs.empty()) {
    fail(ErrorCode::invalid_argument, "sample_quantile", "empty sample");
  }
  std::sort(xs.begin(), xs.end());
  const double pos = p * static_cast<double>(xs.size() - 1);
  const auto i = static_cast<std::size_t>(pos);
  if (i + 1 >= xs.size()) return xs.back();
  const double frac = pos - static_cast<double>(i);
  return xs[i] + frac * (xs[i + 1] - xs[i]);
}

ExperimentSummary run_experiment(std::span<const SimConfig> cases, int replicates,
                                 unsigned threads) {
  if (cases.empty() || replicates < 1) {
    fail(ErrorCode::invalid_argument, "run_experiment", "need cases and replicates");
  }

  ExperimentSummary summary;
  summary.cases.reserve(cases.size());
  for (const SimConfig& cfg : cases) {
    std::vector<ReplicateResult> results(static_cast<std::size_t>(replicates));
    parallel_for(static_cast<std::size_t>(replicates), threads, [&](std::size_t r) {
      results[r] = run_replicate(cfg, static_cast<int>(r));
    });

    CaseSummary cs;
    cs.config = cfg;
    for (std::size_t r = 0; r < results.size(); ++r) {
      if (results[r].failed) {
        ++cs.failed;
        continue;
      }
      cs.replicate_ids.push_back(static_cast<int>(r));
      cs.ads.push_back(results[r].ad);
      cs.bandwidths.push_back(results[r].bandwidth);
    }
    if (!cs.ads.empty()) {
      for (std::size_t q = 0; q < kSummaryProbs.size(); ++q) {
        cs.ad_quantiles[q] = sample_quantile(cs.ads, kSummaryProbs[q]);
      }
    }
    summary.cases.push_back(std::move(cs));
  }
  return summary;
}

std::vector<SimConfig> preset_cases(std::string_view name, std::uint64_t seed) {
  auto make = [&](int n_dists, int n_obs, int k, int grid_m) {
    SimConfig cfg;
    cfg.n_dists = n_dists;
    cfg.n_obs = n_obs;
    cfg.delta = std::pow(10.0, -k) / static_cast<double>(n_dists - 1);
    cfg.grid_m = grid_m;
    cfg.seed = seed;
    cfg.label = "N" + std::to_string(n_dists) + "_n" + std::to_string(n_obs) +
                "_d1e-" + std::to_string(k);
    return cfg;
  };

  if (name == "paper-small") {
    return {make(21, 25, 0, 500)};
  }
  if (name == "paper-trend") {
    return {make(21, 25, 0, 1000), make(101, 200, 0, 1000), make(201, 500, 0, 1000)};
  }
  if (name == "paper-full") {
    std::vector<SimConfig> cases;
    for (int n_dists : {21, 501}) {
      for (int n_obs : {25, 500}) {
        for (int k = 0; k <= 3; ++k) {
          cases.push_back(make(n_dists, n_obs, k, 1000));
        }
      }
    }
    return cases;
  }
  fail(ErrorCode::invalid_argument, "preset_cases",
       "unknown preset '" + std::string(name) + "'");
}

int preset_replicates(std::string_view name) {
  if (name == "paper-small") return 4;
  if (name == "paper-trend") return 20;
  if (name == "paper-full") return 500;
  fail(ErrorCode::invalid_argument, "preset_replicates",
       "unknown preset '" + std::string(name) + "'");
}

}  // namespace wtg
