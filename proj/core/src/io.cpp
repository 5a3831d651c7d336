#include "wtg/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

namespace wtg {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_number(const std::string& field, int line_number, const char* op) {
  const char* first = field.data();
  const char* last = field.data() + field.size();
  while (first < last && std::isspace(static_cast<unsigned char>(*first))) ++first;
  while (last > first && std::isspace(static_cast<unsigned char>(*(last - 1)))) --last;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || first == last) {
    fail(ErrorCode::parse_error, op,
         "line " + std::to_string(line_number) + ": cannot parse number '" + field + "'");
  }
  return value;
}

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

}  // namespace

TimeIndexedData ingest_samples(std::istream& in, const IngestOptions& options,
                               std::vector<int>* rows_per_time) {
  std::string line;
  int line_number = 0;
  // Ordered by time so the output is sorted and reproducible.
  std::map<double, std::vector<double>> groups;

  while (std::getline(in, line)) {
    ++line_number;
    line = strip_cr(line);
    if (line.empty()) continue;
    if (line_number == 1) {
      if (line.rfind("time,", 0) != 0) {
        fail(ErrorCode::parse_error, "ingest_samples",
             "line 1: expected header 'time,value'");
      }
      continue;
    }
    const auto fields = split_csv_line(line);
    if (fields.size() != 2) {
      fail(ErrorCode::parse_error, "ingest_samples",
           "line " + std::to_string(line_number) + ": expected 2 columns, got " +
               std::to_string(fields.size()));
    }
    const double t = parse_number(fields[0], line_number, "ingest_samples");
    const double v = parse_number(fields[1], line_number, "ingest_samples");
    groups[t].push_back(v);
  }
  if (groups.empty()) {
    fail(ErrorCode::empty_group, "ingest_samples", "no data rows");
  }

  std::vector<double> times;
  std::vector<QuantileRep> dists;
  times.reserve(groups.size());
  dists.reserve(groups.size());
  if (rows_per_time) rows_per_time->clear();
  for (const auto& [t, values] : groups) {
    if (values.empty()) {
      fail(ErrorCode::empty_group, "ingest_samples",
           "time " + std::to_string(t) + " has no values");
    }
    times.push_back(t);
    if (rows_per_time) rows_per_time->push_back(static_cast<int>(values.size()));
    dists.push_back(empirical_quantiles(values, options.grid, options.support,
                                        options.policy));
  }
  return TimeIndexedData(std::move(times), std::move(dists));
}

TimeIndexedData ingest_samples_file(const std::string& path, const IngestOptions& options,
                                    std::vector<int>* rows_per_time) {
  std::ifstream in(path);
  if (!in) {
    fail(ErrorCode::io_error, "ingest_samples", "cannot open '" + path + "'");
  }
  return ingest_samples(in, options, rows_per_time);
}

HistogramSeries read_histogram_csv(std::istream& in) {
  std::string line;
  int line_number = 0;
  std::map<double, std::vector<HistogramBin>> groups;

  while (std::getline(in, line)) {
    ++line_number;
    line = strip_cr(line);
    if (line.empty()) continue;
    if (line_number == 1) {
      if (line.rfind("time,", 0) != 0) {
        fail(ErrorCode::parse_error, "read_histogram_csv",
             "line 1: expected header 'time,bin_lo,bin_hi,count'");
      }
      continue;
    }
    const auto fields = split_csv_line(line);
    if (fields.size() != 4) {
      fail(ErrorCode::parse_error, "read_histogram_csv",
           "line " + std::to_string(line_number) + ": expected 4 columns, got " +
               std::to_string(fields.size()));
    }
    const double t = parse_number(fields[0], line_number, "read_histogram_csv");
    HistogramBin bin{parse_number(fields[1], line_number, "read_histogram_csv"),
                     parse_number(fields[2], line_number, "read_histogram_csv"),
                     parse_number(fields[3], line_number, "read_histogram_csv")};
    if (!(bin.lo < bin.hi) || bin.count < 0.0) {
      fail(ErrorCode::parse_error, "read_histogram_csv",
           "line " + std::to_string(line_number) + ": invalid bin");
    }
    groups[t].push_back(bin);
  }
  if (groups.empty()) {
    fail(ErrorCode::empty_group, "read_histogram_csv", "no data rows");
  }

  HistogramSeries series;
  series.reserve(groups.size());
  for (auto& [t, bins] : groups) {
    std::sort(bins.begin(), bins.end(),
              [](const HistogramBin& a, const HistogramBin& b) { return a.lo < b.lo; });
    for (std::size_t i = 1; i < bins.size(); ++i) {
      if (bins[i].lo < bins[i - 1].hi - 1e-12) {
        fail(ErrorCode::parse_error, "read_histogram_csv",
             "overlapping bins at time " + std::to_string(t));
      }
    }
    series.push_back(HistogramSlice{t, std::move(bins)});
  }
  return series;
}

HistogramSeries read_histogram_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    fail(ErrorCode::io_error, "read_histogram_csv", "cannot open '" + path + "'");
  }
  return read_histogram_csv(in);
}

namespace {

// Local-linear scalar smoother with local-constant fallback in windows too
// thin to support a slope, and zero where the kernel sees no data at all.
double smooth_at(std::span<const double> xs, std::span<const double> ys, double x,
                 double h, const KernelSpec& kernel) {
  double k0 = 0.0, k1 = 0.0, k2 = 0.0, s0 = 0.0, s1 = 0.0;
  int in_window = 0;
  double first_x = 0.0;
  bool distinct = false;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double d = xs[i] - x;
    const double w = kernel.scaled(d, h);
    if (w > 0.0) {
      if (in_window == 0) {
        first_x = xs[i];
      } else if (xs[i] != first_x) {
        distinct = true;
      }
      ++in_window;
    }
    k0 += w;
    k1 += w * d;
    k2 += w * d * d;
    s0 += w * ys[i];
    s1 += w * d * ys[i];
  }
  if (in_window == 0 || k0 <= 0.0) return 0.0;
  const double sigma0_sq = k0 * k2 - k1 * k1;
  if (!distinct || !(sigma0_sq > 1e-12 * h * h * h * h)) {
    return s0 / k0;  // Nadaraya-Watson fallback
  }
  return (k2 * s0 - k1 * s1) / sigma0_sq;
}

}  // namespace

QuantileRep histogram_to_quantile(const HistogramSlice& slice, const IngestOptions& options,
                                  const SmoothingOptions& smoothing) {
  if (slice.bins.empty()) {
    fail(ErrorCode::all_zero_counts, "histogram_to_quantile", "no bins");
  }
  double total = 0.0;
  for (const HistogramBin& bin : slice.bins) total += bin.count;
  if (!(total > 0.0)) {
    fail(ErrorCode::all_zero_counts, "histogram_to_quantile",
         "histogram has zero total count");
  }

  std::vector<double> mids;
  std::vector<double> heights;
  std::vector<double> widths;
  mids.reserve(slice.bins.size());
  heights.reserve(slice.bins.size());
  for (const HistogramBin& bin : slice.bins) {
    if (!options.support.contains(bin.lo) || !options.support.contains(bin.hi)) {
      fail(ErrorCode::value_outside_support, "histogram_to_quantile",
           "bin outside support");
    }
    mids.push_back(0.5 * (bin.lo + bin.hi));
    heights.push_back(bin.count / (total * (bin.hi - bin.lo)));
    widths.push_back(bin.hi - bin.lo);
  }

  double h = smoothing.bandwidth;
  if (!(h > 0.0)) {
    std::vector<double> sorted_widths = widths;
    std::sort(sorted_widths.begin(), sorted_widths.end());
    h = 2.0 * sorted_widths[sorted_widths.size() / 2];
  }

  // A bandwidth that cannot see three midpoints anywhere (despite there
  // being at least three) cannot support the smoother.
  if (mids.size() >= 3) {
    int best_window = 0;
    for (double x : mids) {
      int cnt = 0;
      for (double mid : mids) {
        if (std::abs(mid - x) < h) ++cnt;
      }
      best_window = std::max(best_window, cnt);
    }
    if (best_window < 3) {
      fail(ErrorCode::bandwidth_too_small, "histogram_to_quantile",
           "smoothing bandwidth " + std::to_string(h) +
               " sees fewer than 3 bin midpoints in every window");
    }
  }

  const int fine = std::max(32, smoothing.fine_grid);
  const double lo = options.support.lo;
  const double step = options.support.width() / static_cast<double>(fine - 1);
  std::vector<double> grid_x(static_cast<std::size_t>(fine));
  std::vector<double> density(static_cast<std::size_t>(fine));
  for (int i = 0; i < fine; ++i) {
    const auto k = static_cast<std::size_t>(i);
    grid_x[k] = (i == fine - 1) ? options.support.hi : lo + i * step;
    density[k] = std::max(0.0, smooth_at(mids, heights, grid_x[k], h, smoothing.kernel));
  }

  // Renormalize to unit mass (trapezoid), then integrate to a CDF.
  double mass = 0.0;
  for (int i = 0; i + 1 < fine; ++i) {
    const auto k = static_cast<std::size_t>(i);
    mass += 0.5 * (density[k] + density[k + 1]) * (grid_x[k + 1] - grid_x[k]);
  }
  if (!(mass > 0.0)) {
    fail(ErrorCode::all_zero_counts, "histogram_to_quantile",
         "smoothed density vanished everywhere");
  }
  std::vector<double> cdf(static_cast<std::size_t>(fine));
  cdf[0] = 0.0;
  for (int i = 1; i < fine; ++i) {
    const auto k = static_cast<std::size_t>(i);
    cdf[k] = cdf[k - 1] +
             0.5 * (density[k - 1] + density[k]) * (grid_x[k] - grid_x[k - 1]) / mass;
  }
  const double end = cdf.back();
  if (std::abs(end - 1.0) > 1e-9) {
    fail(ErrorCode::numerical_overflow, "histogram_to_quantile",
         "mass conservation violated after renormalization");
  }
  for (double& v : cdf) v /= end;
  cdf.back() = 1.0;

  const CdfRep rep(std::move(grid_x), std::move(cdf), options.support);
  return quantile_from_cdf(rep, options.grid);
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  // Prefer the shortest representation that round-trips.
  for (int precision = 1; precision < 17; ++precision) {
    char shorter[40];
    std::snprintf(shorter, sizeof(shorter), "%.*g", precision, x);
    double back = 0.0;
    std::sscanf(shorter, "%lf", &back);
    if (back == x) return shorter;
  }
  return buf;
}

void write_flow_csv(std::ostream& out, std::span<const double> times,
                    std::span<const QuantileRep> fits) {
  out << "t,u,quantile\n";
  for (std::size_t i = 0; i < times.size(); ++i) {
    const QuantileRep& rep = fits[i];
    for (int j = 0; j < rep.size(); ++j) {
      out << format_double(times[i]) << ',' << format_double(rep.grid().node(j)) << ','
          << format_double(rep.value(j)) << '\n';
    }
  }
}

void write_gradient_csv(std::ostream& out, std::span<const GradientRow> rows) {
  out << "t,u,x,tau,endpoint_flag\n";
  for (const GradientRow& row : rows) {
    const GradientEstimate& est = row.estimate;
    for (int j = 0; j < est.ref.size(); ++j) {
      out << format_double(est.t) << ',' << format_double(est.ref.grid().node(j)) << ','
          << format_double(est.ref.value(j)) << ',' << format_double(est.vector.value(j))
          << ',' << (row.endpoint_flagged ? 1 : 0) << '\n';
    }
  }
}

void write_simulation_csv(std::ostream& out, const ExperimentSummary& summary) {
  out << "case,replicate,ad\n";
  for (const CaseSummary& cs : summary.cases) {
    for (std::size_t r = 0; r < cs.ads.size(); ++r) {
      out << cs.config.label << ',' << cs.replicate_ids[r] << ','
          << format_double(cs.ads[r]) << '\n';
    }
  }
}

std::string summary_json(const ExperimentSummary& summary) {
  std::ostringstream out;
  out << "{\n  \"cases\": [\n";
  for (std::size_t c = 0; c < summary.cases.size(); ++c) {
    const CaseSummary& cs = summary.cases[c];
    out << "    {\n"
        << "      \"label\": \"" << cs.config.label << "\",\n"
        << "      \"n_dists\": " << cs.config.n_dists << ",\n"
        << "      \"n_obs\": " << cs.config.n_obs << ",\n"
        << "      \"delta\": " << format_double(cs.config.delta) << ",\n"
        << "      \"grid_m\": " << cs.config.grid_m << ",\n"
        << "      \"replicates_ok\": " << cs.ads.size() << ",\n"
        << "      \"replicates_failed\": " << cs.failed << ",\n";
    out << "      \"ad_quantiles\": {";
    for (std::size_t q = 0; q < kSummaryProbs.size(); ++q) {
      out << (q == 0 ? "" : ", ") << '"' << format_double(kSummaryProbs[q])
          << "\": " << format_double(cs.ad_quantiles[q]);
    }
    out << "}\n    }" << (c + 1 < summary.cases.size() ? "," : "") << '\n';
  }
  out << "  ]\n}\n";
  return out.str();
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    hash ^= ch;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

}  // namespace wtg
