// Command line front end: estimate distribution flows over time, their
// temporal gradients, and run the built-in simulation harness. All outputs
// are plot-ready long-format CSV plus a JSON manifest; byte-identical for
// identical inputs, flags and seed, regardless of thread count.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wtg/frechet.hpp"
#include "wtg/gradient.hpp"
#include "wtg/io.hpp"
#include "wtg/simulation.hpp"
#include "wtg/version.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

struct CommonOpts {
  std::string samples_path;
  std::string histogram_path;
  std::string out_dir = ".";
  double support_lo = 0.0;
  double support_hi = 1.0;
  int grid_m = 1000;
  std::string kernel_name = "epanechnikov";
  double bandwidth = 0.0;  // 0 -> cross-validate
  bool use_cv = false;
  std::vector<double> cv_candidates;
  double delta = 0.0;  // 0 -> delta scan
  bool use_delta_scan = false;
  std::optional<double> linearize_b;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  bool clip = false;
  double smoothing_bandwidth = 0.0;
  double endpoint_margin = -1.0;  // <0 -> use the bandwidth
  std::vector<double> eval_times;
  int eval_grid = 0;
};

void add_support_options(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--support", [&opts](const std::vector<std::string>& vals) {
        // Accepts "LO,HI" as one token (command line) or two (config file).
        std::string joined;
        for (const auto& v : vals) {
          if (!joined.empty()) joined += ',';
          joined += v;
        }
        double lo = 0.0, hi = 0.0;
        if (std::sscanf(joined.c_str(), "%lf,%lf", &lo, &hi) != 2) return false;
        opts.support_lo = lo;
        opts.support_hi = hi;
        return true;
      },
      "Support interval as LO,HI (default 0,1)");
  cmd->add_option("--grid-m", opts.grid_m, "Quantile grid size (default 1000)");
  cmd->add_option("--kernel", opts.kernel_name, "Smoothing kernel (epanechnikov)");
  cmd->add_option("--seed", opts.seed, "Random seed");
  cmd->add_option("--threads", opts.threads, "Worker threads (0 = auto)");
  cmd->add_option("--out", opts.out_dir, "Output directory");
}

void add_data_options(CLI::App* cmd, CommonOpts& opts) {
  add_support_options(cmd, opts);
  auto* samples = cmd->add_option("--samples", opts.samples_path,
                                  "CSV with header time,value");
  auto* hist = cmd->add_option("--histogram", opts.histogram_path,
                               "CSV with header time,bin_lo,bin_hi,count");
  samples->excludes(hist);
  cmd->add_flag("--clip", opts.clip, "Clip out-of-support sample values");
  cmd->add_option("--smoothing-bandwidth", opts.smoothing_bandwidth,
                  "Histogram density smoothing bandwidth (default 2 x median bin width)");
  cmd->add_option("--bandwidth", opts.bandwidth, "Fixed regression bandwidth");
  cmd->add_flag("--cv", opts.use_cv, "Cross-validate the bandwidth (default)");
  cmd->add_option("--cv-candidates", opts.cv_candidates,
                  "Candidate bandwidths (default: log-spaced grid)")
      ->delimiter(',');
  cmd->add_option("--endpoint-margin", opts.endpoint_margin,
                  "Flag estimates within this distance of the time range ends "
                  "(default: the bandwidth)");
}

void add_gradient_options(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--delta", opts.delta, "Difference-quotient increment");
  cmd->add_flag("--delta-scan", opts.use_delta_scan,
                "Choose the increment by a stability scan (default when --delta absent)");
  cmd->add_option("--linearize-b", [&opts](const std::vector<std::string>& vals) {
        opts.linearize_b = std::stod(vals.back());
        return true;
      },
      "Atomless linearization increment (off by default)");
}

void add_eval_options(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--eval-times", opts.eval_times, "Explicit evaluation times")
      ->delimiter(',');
  cmd->add_option("--eval-grid", opts.eval_grid,
                  "Number of equispaced evaluation times over the observed range");
}

wtg::TimeIndexedData load_data(const CommonOpts& opts, json* input_info = nullptr) {
  const wtg::IngestOptions ingest{
      wtg::QuantileGrid(opts.grid_m),
      wtg::SupportInterval(opts.support_lo, opts.support_hi),
      opts.clip ? wtg::OutOfSupportPolicy::clip : wtg::OutOfSupportPolicy::reject};
  if (!opts.samples_path.empty()) {
    std::vector<int> rows_per_time;
    wtg::TimeIndexedData data =
        wtg::ingest_samples_file(opts.samples_path, ingest, &rows_per_time);
    if (input_info) {
      int total = 0;
      for (int r : rows_per_time) total += r;
      (*input_info)["rows_total"] = total;
      (*input_info)["rows_per_time"] = rows_per_time;
      (*input_info)["time_points"] = data.size();
    }
    return data;
  }
  if (!opts.histogram_path.empty()) {
    const wtg::HistogramSeries series = wtg::read_histogram_csv_file(opts.histogram_path);
    wtg::SmoothingOptions smoothing;
    smoothing.bandwidth = opts.smoothing_bandwidth;
    smoothing.kernel = wtg::KernelSpec::parse(opts.kernel_name);
    std::vector<double> times;
    std::vector<wtg::QuantileRep> dists;
    std::vector<int> bins_per_time;
    for (const wtg::HistogramSlice& slice : series) {
      times.push_back(slice.time);
      bins_per_time.push_back(static_cast<int>(slice.bins.size()));
      dists.push_back(wtg::histogram_to_quantile(slice, ingest, smoothing));
    }
    if (input_info) {
      (*input_info)["bins_per_time"] = bins_per_time;
      (*input_info)["time_points"] = static_cast<int>(times.size());
    }
    return wtg::TimeIndexedData(std::move(times), std::move(dists));
  }
  wtg::fail(wtg::ErrorCode::invalid_argument, "load_data",
            "one of --samples or --histogram is required");
}

double resolve_bandwidth(const CommonOpts& opts, const wtg::TimeIndexedData& data,
                         const wtg::KernelSpec& kernel, json* manifest_cfg) {
  if (opts.bandwidth > 0.0 && !opts.use_cv) {
    (*manifest_cfg)["bandwidth"] = opts.bandwidth;
    (*manifest_cfg)["bandwidth_source"] = "fixed";
    return opts.bandwidth;
  }
  const std::vector<double> candidates =
      opts.cv_candidates.empty() ? wtg::default_bandwidth_grid(data.times)
                                 : opts.cv_candidates;
  wtg::CvOptions cv_options;
  cv_options.seed = opts.seed;
  const wtg::CvResult cv = wtg::cv_bandwidth(data, candidates, kernel, cv_options);
  (*manifest_cfg)["bandwidth"] = cv.bandwidth;
  (*manifest_cfg)["bandwidth_source"] = "cv";
  return cv.bandwidth;
}

double resolve_delta(const CommonOpts& opts, const wtg::TimeIndexedData& data, double h,
                     const wtg::KernelSpec& kernel, json* manifest_cfg) {
  if (opts.delta > 0.0 && !opts.use_delta_scan) {
    (*manifest_cfg)["delta"] = opts.delta;
    (*manifest_cfg)["delta_source"] = "fixed";
    return opts.delta;
  }
  const std::vector<double> ladder = wtg::default_delta_grid(data.times);
  const double mid = 0.5 * (data.time_min() + data.time_max());
  wtg::GradientOptions options;
  options.allow_extrapolation = true;
  const auto scan = wtg::delta_stability_scan(data, mid, ladder, h, kernel, options);
  const double delta = wtg::choose_delta(scan);
  (*manifest_cfg)["delta"] = delta;
  (*manifest_cfg)["delta_source"] = "stability_scan";
  return delta;
}

std::vector<double> resolve_eval_times(const CommonOpts& opts,
                                       const wtg::TimeIndexedData& data) {
  if (!opts.eval_times.empty()) {
    std::vector<double> ts = opts.eval_times;
    std::sort(ts.begin(), ts.end());
    return ts;
  }
  const int n = opts.eval_grid > 0 ? opts.eval_grid : 21;
  std::vector<double> ts(static_cast<std::size_t>(n));
  const double lo = data.time_min();
  const double hi = data.time_max();
  for (int i = 0; i < n; ++i) {
    ts[static_cast<std::size_t>(i)] =
        n == 1 ? 0.5 * (lo + hi)
               : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return ts;
}

std::uint64_t file_hash(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return 0;
  std::ostringstream buf;
  buf << in.rdbuf();
  return wtg::fnv1a(buf.str());
}

std::string hex64(std::uint64_t v) {
  char buf[19];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// Manifest carries everything needed to reproduce the run: effective
// configuration, its hash, input file hashes, and the produced files.
void write_manifest(const fs::path& out_dir, const std::string& subcommand,
                    const CommonOpts& opts, json config,
                    const std::vector<std::string>& outputs) {
  json manifest;
  manifest["tool"] = "wtg";
  manifest["version"] = wtg::kVersion;
  manifest["subcommand"] = subcommand;
  manifest["seed"] = opts.seed;

  json inputs = json::array();
  for (const std::string& path : {opts.samples_path, opts.histogram_path}) {
    if (path.empty()) continue;
    inputs.push_back({{"path", path}, {"fnv1a", hex64(file_hash(path))}});
  }
  manifest["inputs"] = inputs;
  manifest["config"] = config;
  manifest["config_hash"] = hex64(wtg::fnv1a(config.dump()));
  manifest["outputs"] = outputs;

  std::ofstream out(out_dir / "manifest.json", std::ios::binary);
  out << manifest.dump(2) << '\n';
}

json base_config(const CommonOpts& opts) {
  json cfg;
  cfg["support"] = {opts.support_lo, opts.support_hi};
  cfg["grid_m"] = opts.grid_m;
  cfg["kernel"] = opts.kernel_name;
  cfg["clip"] = opts.clip;
  if (opts.smoothing_bandwidth > 0.0) {
    cfg["smoothing_bandwidth"] = opts.smoothing_bandwidth;
  }
  if (opts.linearize_b) cfg["linearize_b"] = *opts.linearize_b;
  return cfg;
}

std::ofstream open_output(const fs::path& out_dir, const std::string& name) {
  fs::create_directories(out_dir);
  std::ofstream out(out_dir / name, std::ios::binary);
  if (!out) {
    wtg::fail(wtg::ErrorCode::io_error, "open_output",
              "cannot write " + (out_dir / name).string());
  }
  return out;
}

int run_estimate_flow(const CommonOpts& opts) {
  json input_info;
  const wtg::TimeIndexedData data = load_data(opts, &input_info);
  const wtg::KernelSpec kernel = wtg::KernelSpec::parse(opts.kernel_name);
  json cfg = base_config(opts);
  cfg["input"] = input_info;
  const double h = resolve_bandwidth(opts, data, kernel, &cfg);
  const std::vector<double> ts = resolve_eval_times(opts, data);

  std::vector<wtg::QuantileRep> fits;
  fits.reserve(ts.size());
  for (double t : ts) {
    fits.push_back(wtg::local_frechet_estimate(data, t, h, kernel));
  }

  const fs::path out_dir(opts.out_dir);
  auto out = open_output(out_dir, "flow.csv");
  wtg::write_flow_csv(out, ts, fits);
  cfg["eval_times"] = ts;
  write_manifest(out_dir, "estimate-flow", opts, cfg, {"flow.csv"});
  std::cout << "wrote " << (out_dir / "flow.csv").string() << " (" << ts.size()
            << " time points, bandwidth " << wtg::format_double(h) << ")\n";
  return 0;
}

int run_gradient(const CommonOpts& opts) {
  json input_info;
  const wtg::TimeIndexedData data = load_data(opts, &input_info);
  const wtg::KernelSpec kernel = wtg::KernelSpec::parse(opts.kernel_name);
  json cfg = base_config(opts);
  cfg["input"] = input_info;
  const double h = resolve_bandwidth(opts, data, kernel, &cfg);
  const double delta = resolve_delta(opts, data, h, kernel, &cfg);
  const std::vector<double> ts = resolve_eval_times(opts, data);

  wtg::GradientOptions options;
  options.linearize_b = opts.linearize_b;
  options.allow_extrapolation = true;

  const double margin = opts.endpoint_margin >= 0.0 ? opts.endpoint_margin : h;
  std::vector<wtg::GradientRow> rows;
  rows.reserve(ts.size());
  for (double t : ts) {
    wtg::GradientRow row{wtg::wtg_estimate(data, t, delta, h, kernel, options), false};
    // Local regression has inflated variance near the range ends.
    row.endpoint_flagged =
        (t - data.time_min() < margin) || (data.time_max() - t < margin);
    rows.push_back(std::move(row));
  }

  const fs::path out_dir(opts.out_dir);
  auto out = open_output(out_dir, "gradient.csv");
  wtg::write_gradient_csv(out, rows);
  cfg["eval_times"] = ts;
  cfg["endpoint_margin"] = margin;
  write_manifest(out_dir, "gradient", opts, cfg, {"gradient.csv"});
  std::cout << "wrote " << (out_dir / "gradient.csv").string() << " (" << ts.size()
            << " time points, bandwidth " << wtg::format_double(h) << ", delta "
            << wtg::format_double(delta) << ")\n";
  return 0;
}

int run_cv_bandwidth(const CommonOpts& opts) {
  json input_info;
  const wtg::TimeIndexedData data = load_data(opts, &input_info);
  const wtg::KernelSpec kernel = wtg::KernelSpec::parse(opts.kernel_name);
  const std::vector<double> candidates =
      opts.cv_candidates.empty() ? wtg::default_bandwidth_grid(data.times)
                                 : opts.cv_candidates;
  wtg::CvOptions cv_options;
  cv_options.seed = opts.seed;
  const wtg::CvResult cv = wtg::cv_bandwidth(data, candidates, kernel, cv_options);

  const fs::path out_dir(opts.out_dir);
  auto out = open_output(out_dir, "cv.csv");
  out << "candidate,objective,degenerate_points\n";
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    out << wtg::format_double(candidates[i]) << ','
        << wtg::format_double(cv.objectives[i]) << ',' << cv.degenerate_counts[i]
        << '\n';
  }
  json cfg = base_config(opts);
  cfg["input"] = input_info;
  cfg["candidates"] = candidates;
  cfg["bandwidth"] = cv.bandwidth;
  write_manifest(out_dir, "cv-bandwidth", opts, cfg, {"cv.csv"});
  std::cout << "selected bandwidth " << wtg::format_double(cv.bandwidth) << '\n';
  return 0;
}

int run_delta_scan(const CommonOpts& opts) {
  json input_info;
  const wtg::TimeIndexedData data = load_data(opts, &input_info);
  const wtg::KernelSpec kernel = wtg::KernelSpec::parse(opts.kernel_name);
  json cfg = base_config(opts);
  cfg["input"] = input_info;
  const double h = resolve_bandwidth(opts, data, kernel, &cfg);
  const std::vector<double> ladder = wtg::default_delta_grid(data.times);
  const double mid = 0.5 * (data.time_min() + data.time_max());

  wtg::GradientOptions options;
  options.allow_extrapolation = true;
  const auto scan = wtg::delta_stability_scan(data, mid, ladder, h, kernel, options);
  const double chosen = wtg::choose_delta(scan);

  const fs::path out_dir(opts.out_dir);
  auto out = open_output(out_dir, "deltas.csv");
  out << "delta,instability\n";
  for (const auto& entry : scan) {
    out << wtg::format_double(entry.delta) << ','
        << wtg::format_double(entry.instability) << '\n';
  }
  cfg["scan_time"] = mid;
  cfg["delta"] = chosen;
  write_manifest(out_dir, "delta-scan", opts, cfg, {"deltas.csv"});
  std::cout << "selected delta " << wtg::format_double(chosen) << '\n';
  return 0;
}

int run_rank_dynamics(const CommonOpts& opts, const std::string& trajectory_path) {
  json input_info;
  const wtg::TimeIndexedData data = load_data(opts, &input_info);
  const wtg::KernelSpec kernel = wtg::KernelSpec::parse(opts.kernel_name);
  json cfg = base_config(opts);
  cfg["input"] = input_info;
  const double h = resolve_bandwidth(opts, data, kernel, &cfg);
  const double delta = resolve_delta(opts, data, h, kernel, &cfg);

  // Trajectory file shares the samples schema: time,value with one row per time.
  std::ifstream traj_in(trajectory_path);
  if (!traj_in) {
    wtg::fail(wtg::ErrorCode::io_error, "rank-dynamics",
              "cannot open '" + trajectory_path + "'");
  }
  std::vector<wtg::TrajectoryPoint> trajectory;
  std::string line;
  int line_number = 0;
  while (std::getline(traj_in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line_number == 1) continue;
    wtg::TrajectoryPoint pt{};
    if (std::sscanf(line.c_str(), "%lf,%lf", &pt.t, &pt.value) != 2) {
      wtg::fail(wtg::ErrorCode::parse_error, "rank-dynamics",
                "line " + std::to_string(line_number) + ": expected time,value");
    }
    trajectory.push_back(pt);
  }
  std::sort(trajectory.begin(), trajectory.end(),
            [](const auto& a, const auto& b) { return a.t < b.t; });

  wtg::GradientOptions options;
  options.allow_extrapolation = true;
  std::vector<wtg::GradientEstimate> gradients;
  gradients.reserve(trajectory.size());
  for (const auto& pt : trajectory) {
    gradients.push_back(wtg::wtg_estimate(data, pt.t, delta, h, kernel, options));
  }
  const auto trends = wtg::rank_dynamics(trajectory, gradients);

  const fs::path out_dir(opts.out_dir);
  auto out = open_output(out_dir, "rank.csv");
  out << "t,value,dvalue_dt,tau,trend\n";
  for (std::size_t i = 0; i < trajectory.size(); ++i) {
    const std::size_t lo = (i == 0) ? 0 : i - 1;
    const std::size_t hi = (i + 1 == trajectory.size()) ? i : i + 1;
    const double g_dot = (trajectory[hi].value - trajectory[lo].value) /
                         (trajectory[hi].t - trajectory[lo].t);
    const double tau = wtg::eval_gradient_at_x(gradients[i], trajectory[i].value);
    out << wtg::format_double(trajectory[i].t) << ','
        << wtg::format_double(trajectory[i].value) << ',' << wtg::format_double(g_dot)
        << ',' << wtg::format_double(tau) << ',' << wtg::to_string(trends[i]) << '\n';
  }
  cfg["trajectory"] = trajectory_path;
  write_manifest(out_dir, "rank-dynamics", opts, cfg, {"rank.csv"});
  std::cout << "wrote " << (out_dir / "rank.csv").string() << '\n';
  return 0;
}

int run_simulate(const CommonOpts& opts, const std::string& preset, int replicates_flag,
                 int n_dists, int n_obs, double case_delta) {
  std::vector<wtg::SimConfig> cases;
  int replicates = 0;
  if (!preset.empty()) {
    cases = wtg::preset_cases(preset, opts.seed);
    replicates = replicates_flag > 0 ? replicates_flag : wtg::preset_replicates(preset);
  } else {
    wtg::SimConfig cfg;
    cfg.n_dists = n_dists;
    cfg.n_obs = n_obs;
    cfg.delta = case_delta > 0.0 ? case_delta : 1.0 / (n_dists - 1);
    cfg.grid_m = opts.grid_m;
    cfg.seed = opts.seed;
    cfg.label = "custom";
    cases.push_back(cfg);
    replicates = replicates_flag > 0 ? replicates_flag : 20;
  }

  const wtg::ExperimentSummary summary =
      wtg::run_experiment(cases, replicates, opts.threads);

  const fs::path out_dir(opts.out_dir);
  {
    auto out = open_output(out_dir, "simulation.csv");
    wtg::write_simulation_csv(out, summary);
  }
  {
    auto out = open_output(out_dir, "summary.json");
    out << wtg::summary_json(summary);
  }

  json cfg = base_config(opts);
  cfg["preset"] = preset.empty() ? "custom" : preset;
  cfg["replicates"] = replicates;
  json case_list = json::array();
  for (const auto& c : cases) {
    case_list.push_back({{"label", c.label},
                         {"n_dists", c.n_dists},
                         {"n_obs", c.n_obs},
                         {"delta", c.delta},
                         {"grid_m", c.grid_m}});
  }
  cfg["cases"] = case_list;
  write_manifest(out_dir, "simulate", opts, cfg,
                 {"simulation.csv", "summary.json"});

  for (const auto& cs : summary.cases) {
    std::cout << cs.config.label << ": median AD "
              << wtg::format_double(cs.ad_quantiles[2]) << " ("
              << cs.ads.size() << " ok, " << cs.failed << " failed)\n";
  }
  return 0;
}

int run_ingest_histogram(const CommonOpts& opts) {
  if (opts.histogram_path.empty()) {
    wtg::fail(wtg::ErrorCode::invalid_argument, "ingest-histogram",
              "--histogram is required");
  }
  json input_info;
  const wtg::TimeIndexedData data = load_data(opts, &input_info);
  const fs::path out_dir(opts.out_dir);
  auto out = open_output(out_dir, "quantiles.csv");
  wtg::write_flow_csv(out, data.times, data.dists);
  json cfg = base_config(opts);
  cfg["input"] = input_info;
  write_manifest(out_dir, "ingest-histogram", opts, cfg, {"quantiles.csv"});
  std::cout << "wrote " << (out_dir / "quantiles.csv").string() << " ("
            << data.size() << " time points)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wasserstein temporal gradients for time-indexed 1-D distributions"};
  app.set_version_flag("--version", wtg::kVersion);
  // Placed before the subcommand: wtg --config run.ini gradient ...
  // Sections in the file are named after subcommands; flags override.
  app.set_config("--config", "", "Options file (INI, one [section] per subcommand)");
  app.require_subcommand(1);

  CommonOpts opts;
  std::string trajectory_path;
  std::string preset;
  int replicates = 0;
  int n_dists = 21;
  int n_obs = 25;
  double case_delta = 0.0;

  auto* flow_cmd = app.add_subcommand("estimate-flow",
                                      "Fit the distribution flow on a time grid");
  add_data_options(flow_cmd, opts);
  add_eval_options(flow_cmd, opts);

  auto* grad_cmd = app.add_subcommand("gradient",
                                      "Estimate temporal gradients on a time grid");
  add_data_options(grad_cmd, opts);
  add_gradient_options(grad_cmd, opts);
  add_eval_options(grad_cmd, opts);

  auto* cv_cmd = app.add_subcommand("cv-bandwidth", "Cross-validate the bandwidth");
  add_data_options(cv_cmd, opts);

  auto* scan_cmd = app.add_subcommand("delta-scan",
                                      "Stability scan for the difference increment");
  add_data_options(scan_cmd, opts);
  add_gradient_options(scan_cmd, opts);

  auto* rank_cmd = app.add_subcommand("rank-dynamics",
                                      "Classify a trajectory against the flow");
  add_data_options(rank_cmd, opts);
  add_gradient_options(rank_cmd, opts);
  rank_cmd->add_option("--trajectory", trajectory_path, "CSV with header time,value")
      ->required();

  auto* sim_cmd = app.add_subcommand("simulate", "Run the simulation study");
  add_support_options(sim_cmd, opts);
  sim_cmd->add_option("--preset", preset, "paper-small | paper-trend | paper-full");
  sim_cmd->add_option("--replicates", replicates, "Replicates per case");
  sim_cmd->add_option("--n-dists", n_dists, "Custom case: number of distributions N");
  sim_cmd->add_option("--n-obs", n_obs, "Custom case: observations per distribution n");
  sim_cmd->add_option("--delta", case_delta, "Custom case: difference increment");

  auto* ingest_cmd = app.add_subcommand("ingest-histogram",
                                        "Convert histogram series to quantile curves");
  add_data_options(ingest_cmd, opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (flow_cmd->parsed()) return run_estimate_flow(opts);
    if (grad_cmd->parsed()) return run_gradient(opts);
    if (cv_cmd->parsed()) return run_cv_bandwidth(opts);
    if (scan_cmd->parsed()) return run_delta_scan(opts);
    if (rank_cmd->parsed()) return run_rank_dynamics(opts, trajectory_path);
    if (sim_cmd->parsed()) {
      return run_simulate(opts, preset, replicates, n_dists, n_obs, case_delta);
    }
    if (ingest_cmd->parsed()) return run_ingest_histogram(opts);
  } catch (const wtg::Error& e) {
    std::cerr << "error [" << wtg::to_string(e.code()) << "] " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
