#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wtg/frechet.hpp"
#include "wtg/gradient.hpp"

namespace wtg {

/// One simulation case: N distributions, n observations each, difference
/// increment delta. Everything downstream is a pure function of
/// (seed, replicate).
struct SimConfig {
  int n_dists = 21;    // N
  int n_obs = 25;      // n
  double delta = 0.05; // typically 10^-k / (N - 1)
  int grid_m = 1000;
  std::vector<double> h_candidates{};  // empty -> default grid per dataset
  int replicates = 20;
  std::uint64_t seed = 1;
  std::string label{};
};

/// Monotone distortion D_a(x) = x - |a|^{-1} sin(a x); D_a' = 1 - sgn(a) cos(a x) >= 0.
double distortion(double a, double x);

struct SimDataset {
  TimeIndexedData data;                      // empirical reps, one per time
  std::vector<double> distortions;           // a_i
  std::vector<std::vector<double>> samples;  // raw draws per i
};

/// Target-flow dataset: T_i ~ Unif[0,1], a_i ~ Unif{+-10pi..+-14pi},
/// P_i = D_{a_i} # nu(T_i) realized by composing quantiles, samples drawn by
/// inverse-CDF from the exact composed quantile, then estimated by
/// empirical_quantiles. Bitwise reproducible per (cfg.seed, replicate).
SimDataset generate_dataset(const SimConfig& cfg, int replicate);

/// Evaluation grid for the discrepancy summary: k/100 for k = 1..99.
std::vector<double> ad_time_grid();

/// Mean over the provided estimates of the squared transported error
/// against the closed-form target-flow gradient at each estimate's time.
double average_discrepancy(std::span<const GradientEstimate> estimates,
                           const QuantileGrid& grid);

struct ReplicateResult {
  double ad = 0.0;
  double bandwidth = 0.0;
  bool failed = false;
  std::string error{};
};

/// One full pipeline pass: dataset, CV bandwidth, gradient estimates on the
/// evaluation grid, average discrepancy.
ReplicateResult run_replicate(const SimConfig& cfg, int replicate);

inline constexpr std::array<double, 5> kSummaryProbs = {0.1, 0.25, 0.5, 0.75, 0.9};

struct CaseSummary {
  SimConfig config;
  std::vector<int> replicate_ids;  // successful replicates, ascending
  std::vector<double> ads;         // aligned with replicate_ids
  std::vector<double> bandwidths;
  int failed = 0;
  std::array<double, 5> ad_quantiles{};  // at kSummaryProbs
};

struct ExperimentSummary {
  std::vector<CaseSummary> cases;
};

/// Runs every case for `replicates` replicates (parallel over replicates,
/// aggregation in index order). Per-replicate failures are recorded, not
/// fatal.
ExperimentSummary run_experiment(std::span<const SimConfig> cases, int replicates,
                                 unsigned threads = 0);

/// Linear-interpolation sample quantile of a copy of xs.
double sample_quantile(std::vector<double> xs, double p);

/// Named case lists: "paper-small" (one quick case), "paper-trend" (three
/// growing cases), "paper-full" (the sixteen-case study).
std::vector<SimConfig> preset_cases(std::string_view name, std::uint64_t seed);
int preset_replicates(std::string_view name);

}  // namespace wtg
