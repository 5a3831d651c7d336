#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "oracles.hpp"
#include "wtg/geometry.hpp"
#include "wtg/io.hpp"
#include "wtg/rng.hpp"
#include "wtg/truncated_gaussian.hpp"

using namespace wtg;

namespace {

IngestOptions small_options(int m = 4, double lo = 0.0, double hi = 10.0) {
  return IngestOptions{QuantileGrid(m), SupportInterval(lo, hi),
                       OutOfSupportPolicy::reject};
}

}  // namespace

TEST_CASE("ingest groups rows by time and sorts") {
  std::istringstream in(
      "time,value\n"
      "2000,4\n2000,2\n2000,3\n2000,1\n"
      "1999,8\n1999,6\n1999,5\n1999,7\n");
  const TimeIndexedData data = ingest_samples(in, small_options());
  REQUIRE(data.size() == 2);
  CHECK(data.times[0] == 1999.0);
  CHECK(data.times[1] == 2000.0);
  CHECK(data.dists[0].value(0) == 5.0);
  CHECK(data.dists[0].value(3) == 8.0);
  CHECK(data.dists[1].value(0) == 1.0);
  CHECK(data.dists[1].value(3) == 4.0);
}

TEST_CASE("ingest reports the failing line") {
  std::ostringstream file;
  file << "time,value\n";
  for (int i = 0; i < 15; ++i) file << "1," << i << "\n";
  file << "1,oops\n";  // line 17
  std::istringstream in(file.str());
  try {
    (void)ingest_samples(in, small_options());
    FAIL("expected parse_error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::parse_error);
    CHECK(std::string(e.what()).find("line 17") != std::string::npos);
  }
}

TEST_CASE("ingest rejects empty input and missing header") {
  std::istringstream empty("time,value\n");
  CHECK_THROWS_AS((void)ingest_samples(empty, small_options()), Error);
  std::istringstream headerless("1,2\n3,4\n");
  CHECK_THROWS_AS((void)ingest_samples(headerless, small_options()), Error);
}

TEST_CASE("emit then ingest reproduces the data") {
  Rng rng(29);
  std::ostringstream file;
  file << "time,value\n";
  std::vector<double> times{1.0, 2.0, 3.0};
  std::vector<std::vector<double>> values(3);
  for (std::size_t i = 0; i < 3; ++i) {
    for (int k = 0; k < 40; ++k) {
      const double v = rng.uniform(0.0, 10.0);
      values[i].push_back(v);
      file << format_double(times[i]) << ',' << format_double(v) << '\n';
    }
  }
  const IngestOptions options = small_options(16);
  std::istringstream in1(file.str());
  const TimeIndexedData first = ingest_samples(in1, options);

  // Re-emit from the parsed values and ingest again.
  std::ostringstream file2;
  file2 << "time,value\n";
  for (std::size_t i = 0; i < 3; ++i) {
    for (double v : values[i]) {
      file2 << format_double(times[i]) << ',' << format_double(v) << '\n';
    }
  }
  std::istringstream in2(file2.str());
  const TimeIndexedData second = ingest_samples(in2, options);
  REQUIRE(first.size() == second.size());
  for (int i = 0; i < first.size(); ++i) {
    CHECK(first.times[static_cast<std::size_t>(i)] ==
          second.times[static_cast<std::size_t>(i)]);
    for (int j = 0; j < first.grid().size(); ++j) {
      CHECK(first.dists[static_cast<std::size_t>(i)].value(j) ==
            second.dists[static_cast<std::size_t>(i)].value(j));
    }
  }
}

TEST_CASE("histogram csv parsing") {
  std::istringstream in(
      "time,bin_lo,bin_hi,count\n"
      "1,0.0,0.5,10\n"
      "1,0.5,1.0,30\n"
      "2,0.0,1.0,5\n");
  const HistogramSeries series = read_histogram_csv(in);
  REQUIRE(series.size() == 2);
  CHECK(series[0].time == 1.0);
  REQUIRE(series[0].bins.size() == 2);
  CHECK(series[0].bins[1].count == 30.0);

  std::istringstream overlapping(
      "time,bin_lo,bin_hi,count\n"
      "1,0.0,0.6,10\n"
      "1,0.5,1.0,30\n");
  CHECK_THROWS_AS((void)read_histogram_csv(overlapping), Error);
}

TEST_CASE("single full-support bin smooths to the uniform distribution") {
  const HistogramSlice slice{0.0, {{0.0, 1.0, 42.0}}};
  const IngestOptions options = small_options(50, 0.0, 1.0);
  const QuantileRep rep = histogram_to_quantile(slice, options, SmoothingOptions{});
  for (int j = 0; j < rep.size(); ++j) {
    CHECK(std::abs(rep.value(j) - rep.grid().node(j)) <= 0.01);
  }
}

TEST_CASE("two equal adjacent bins put half the mass at the shared boundary") {
  const HistogramSlice slice{0.0, {{0.2, 0.5, 100.0}, {0.5, 0.8, 100.0}}};
  const IngestOptions options = small_options(200, 0.0, 1.0);
  const QuantileRep rep = histogram_to_quantile(slice, options, SmoothingOptions{});
  const CdfRep cdf = cdf_from_quantile(rep);
  CHECK(std::abs(cdf(0.5) - 0.5) <= 0.02);
}

TEST_CASE("histogram of truncated-Gaussian draws round-trips in Wasserstein") {
  const TruncatedGaussianParams target{0.5, 0.2, SupportInterval(0.0, 1.0)};
  Rng rng(31);
  const int bins = 50;
  std::vector<double> counts(bins, 0.0);
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    const double x = truncnorm_quantile(target, rng.uniform01());
    int b = static_cast<int>(x * bins);
    if (b == bins) b = bins - 1;
    counts[static_cast<std::size_t>(b)] += 1.0;
  }
  HistogramSlice slice{0.0, {}};
  for (int b = 0; b < bins; ++b) {
    slice.bins.push_back(HistogramBin{static_cast<double>(b) / bins,
                                      static_cast<double>(b + 1) / bins,
                                      counts[static_cast<std::size_t>(b)]});
  }
  const IngestOptions options = small_options(500, 0.0, 1.0);
  const QuantileRep rep = histogram_to_quantile(slice, options, SmoothingOptions{});
  const QuantileRep truth = truncnorm_rep(target, QuantileGrid(500));
  CHECK(wasserstein_distance(rep, truth) <= 0.02);
}

TEST_CASE("histogram error paths") {
  const IngestOptions options = small_options(20, 0.0, 1.0);

  const HistogramSlice zeros{0.0, {{0.0, 0.5, 0.0}, {0.5, 1.0, 0.0}}};
  try {
    (void)histogram_to_quantile(zeros, options, SmoothingOptions{});
    FAIL("expected all_zero_counts");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::all_zero_counts);
  }

  HistogramSlice many{0.0, {}};
  for (int b = 0; b < 10; ++b) {
    many.bins.push_back(HistogramBin{b / 10.0, (b + 1) / 10.0, 1.0});
  }
  SmoothingOptions tiny;
  tiny.bandwidth = 0.01;  // narrower than the midpoint spacing
  try {
    (void)histogram_to_quantile(many, options, tiny);
    FAIL("expected bandwidth_too_small");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::bandwidth_too_small);
  }
}

TEST_CASE("flow csv emission is deterministic and parses back exactly") {
  const QuantileGrid grid(3);
  const SupportInterval support(0.0, 1.0);
  const std::vector<double> times{0.25};
  const std::vector<QuantileRep> fits{oracles::uniform_rep(0.0, 1.0, grid, support)};
  std::ostringstream out1, out2;
  write_flow_csv(out1, times, fits);
  write_flow_csv(out2, times, fits);
  CHECK(out1.str() == out2.str());

  std::istringstream in(out1.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "t,u,quantile");
  for (int j = 0; j < grid.size(); ++j) {
    REQUIRE(std::getline(in, line));
    double t = 0.0, u = 0.0, q = 0.0;
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf", &t, &u, &q) == 3);
    CHECK(t == 0.25);
    CHECK(u == grid.node(j));
    CHECK(q == fits[0].value(j));
  }
}

TEST_CASE("format_double round-trips") {
  Rng rng(37);
  for (int it = 0; it < 1000; ++it) {
    const double x = (rng.uniform01() - 0.5) * std::pow(10.0, rng.uniform(-6.0, 6.0));
    const std::string s = format_double(x);
    CHECK(std::stod(s) == x);
  }
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(1.0) == "1");
}

TEST_CASE("fnv1a known vectors") {
  CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a("hello") == 0xa430d84680aabd0bULL);
}
