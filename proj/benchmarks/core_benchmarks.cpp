#include <benchmark/benchmark.h>

#include <vector>

#include "wtg/frechet.hpp"
#include "wtg/geometry.hpp"
#include "wtg/gradient.hpp"
#include "wtg/isotonic.hpp"
#include "wtg/rng.hpp"
#include "wtg/truncated_gaussian.hpp"

namespace {

wtg::QuantileRep random_rep(wtg::Rng& rng, const wtg::QuantileGrid& grid,
                            const wtg::SupportInterval& support) {
  std::vector<double> values(static_cast<std::size_t>(grid.size()));
  for (double& v : values) v = rng.uniform(support.lo, support.hi);
  std::sort(values.begin(), values.end());
  return wtg::QuantileRep(grid, std::move(values), support);
}

wtg::TimeIndexedData target_flow(int n, int m) {
  std::vector<double> times(static_cast<std::size_t>(n));
  std::vector<wtg::QuantileRep> dists;
  const wtg::QuantileGrid grid(m);
  for (int i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / (n - 1);
    times[static_cast<std::size_t>(i)] = t;
    dists.push_back(wtg::truncnorm_rep(wtg::flow_params(t).dist, grid));
  }
  return wtg::TimeIndexedData(std::move(times), std::move(dists));
}

void BM_WassersteinDistance(benchmark::State& state) {
  const wtg::QuantileGrid grid(static_cast<int>(state.range(0)));
  const wtg::SupportInterval support(0.0, 1.0);
  wtg::Rng rng(1);
  const wtg::QuantileRep a = random_rep(rng, grid, support);
  const wtg::QuantileRep b = random_rep(rng, grid, support);
  for (auto _ : state) {
    benchmark::DoNotOptimize(wtg::wasserstein_distance(a, b));
  }
}
BENCHMARK(BM_WassersteinDistance)->Arg(100)->Arg(1000)->Arg(10000);

void BM_IsotonicProjection(benchmark::State& state) {
  wtg::Rng rng(2);
  std::vector<double> values(static_cast<std::size_t>(state.range(0)));
  for (double& v : values) v = rng.uniform01();
  std::vector<double> work = values;
  for (auto _ : state) {
    work = values;
    wtg::isotonic_projection(work);
    benchmark::DoNotOptimize(work.data());
  }
}
BENCHMARK(BM_IsotonicProjection)->Arg(1000)->Arg(10000);

void BM_LocalFrechetEstimate(benchmark::State& state) {
  const wtg::TimeIndexedData data = target_flow(static_cast<int>(state.range(0)), 1000);
  const wtg::KernelSpec kernel{};
  for (auto _ : state) {
    benchmark::DoNotOptimize(wtg::local_frechet_estimate(data, 0.5, 0.1, kernel));
  }
}
BENCHMARK(BM_LocalFrechetEstimate)->Arg(21)->Arg(201);

void BM_WtgEstimate(benchmark::State& state) {
  const wtg::TimeIndexedData data = target_flow(static_cast<int>(state.range(0)), 1000);
  const wtg::KernelSpec kernel{};
  for (auto _ : state) {
    benchmark::DoNotOptimize(wtg::wtg_estimate(data, 0.5, 1e-3, 0.1, kernel));
  }
}
BENCHMARK(BM_WtgEstimate)->Arg(21)->Arg(201);

void BM_TruncnormQuantile(benchmark::State& state) {
  const wtg::TruncatedGaussianParams params{0.5, 0.6, wtg::SupportInterval(0.0, 1.0)};
  double u = 0.0;
  for (auto _ : state) {
    u += 1e-7;
    if (u >= 1.0) u = 1e-7;
    benchmark::DoNotOptimize(wtg::truncnorm_quantile(params, u));
  }
}
BENCHMARK(BM_TruncnormQuantile);

void BM_ClosedFormGradient(benchmark::State& state) {
  double x = 0.01;
  for (auto _ : state) {
    x += 1e-5;
    if (x >= 0.99) x = 0.01;
    benchmark::DoNotOptimize(wtg::wtg_closed_form(0.37, x));
  }
}
BENCHMARK(BM_ClosedFormGradient);

}  // namespace

BENCHMARK_MAIN();
