#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "wtg/frechet.hpp"
#include "wtg/gradient.hpp"
#include "wtg/simulation.hpp"

namespace wtg {

struct HistogramBin {
  double lo;
  double hi;
  double count;
};

/// Histogram of one time point: non-overlapping sorted bins within the
/// support. Bin widths may differ across time points.
struct HistogramSlice {
  double time;
  std::vector<HistogramBin> bins;
};

using HistogramSeries = std::vector<HistogramSlice>;

struct IngestOptions {
  QuantileGrid grid{1000};
  SupportInterval support{0.0, 1.0};
  OutOfSupportPolicy policy = OutOfSupportPolicy::reject;
};

/// Reads "time,value" CSV (header required) and groups rows into one
/// empirical quantile representation per distinct time, sorted by time.
/// Parse failures carry the 1-based line number. When rows_per_time is
/// given it receives the group sizes, aligned with the output times.
TimeIndexedData ingest_samples(std::istream& in, const IngestOptions& options,
                               std::vector<int>* rows_per_time = nullptr);
TimeIndexedData ingest_samples_file(const std::string& path, const IngestOptions& options,
                                    std::vector<int>* rows_per_time = nullptr);

/// Reads "time,bin_lo,bin_hi,count" CSV into a histogram series, grouped by
/// time and sorted.
HistogramSeries read_histogram_csv(std::istream& in);
HistogramSeries read_histogram_csv_file(const std::string& path);

struct SmoothingOptions {
  /// 0 = automatic: 2 x median bin width.
  double bandwidth = 0.0;
  int fine_grid = 2001;
  KernelSpec kernel{};
};

/// Histogram -> density heights at bin midpoints -> local-linear smoothing
/// onto a fine support grid (local-constant fallback in thin windows),
/// negatives clipped, renormalized to unit mass, integrated and inverted.
QuantileRep histogram_to_quantile(const HistogramSlice& slice, const IngestOptions& options,
                                  const SmoothingOptions& smoothing);

// ---- plot-ready output emission -------------------------------------------

/// Deterministic shortest round-trip formatting ("%.17g" trimmed), identical
/// across runs and thread counts.
std::string format_double(double x);

void write_flow_csv(std::ostream& out, std::span<const double> times,
                    std::span<const QuantileRep> fits);

struct GradientRow {
  GradientEstimate estimate;
  bool endpoint_flagged = false;
};

void write_gradient_csv(std::ostream& out, std::span<const GradientRow> rows);

void write_simulation_csv(std::ostream& out, const ExperimentSummary& summary);
std::string summary_json(const ExperimentSummary& summary);

/// 64-bit FNV-1a; used for config hashes in manifests.
std::uint64_t fnv1a(std::string_view bytes);

}  // namespace wtg
