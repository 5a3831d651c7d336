#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "wtg/quantile.hpp"
#include "wtg/geometry.hpp"
#include "wtg/rng.hpp"
#include "wtg/truncated_gaussian.hpp"

using namespace wtg;

TEST_CASE("empirical quantiles hit order statistics") {
  const QuantileGrid grid(4);
  const SupportInterval support(0.0, 5.0);
  const std::vector<double> sample{3.0, 1.0, 4.0, 2.0};
  const QuantileRep rep = empirical_quantiles(sample, grid, support);
  CHECK(rep.value(0) == 1.0);
  CHECK(rep.value(1) == 2.0);
  CHECK(rep.value(2) == 3.0);
  CHECK(rep.value(3) == 4.0);
}

TEST_CASE("empirical quantiles of a constant sample are constant") {
  const QuantileGrid grid(7);
  const SupportInterval support(0.0, 1.0);
  const std::vector<double> sample(13, 0.42);
  const QuantileRep rep = empirical_quantiles(sample, grid, support);
  for (int j = 0; j < rep.size(); ++j) CHECK(rep.value(j) == 0.42);
}

TEST_CASE("empirical quantiles of uniform draws track the identity") {
  const QuantileGrid grid(100);
  const SupportInterval support(0.0, 1.0);
  Rng rng(7);
  std::vector<double> sample(10000);
  for (double& x : sample) x = rng.uniform01();
  const QuantileRep rep = empirical_quantiles(sample, grid, support);
  double worst = 0.0;
  for (int j = 0; j < rep.size(); ++j) {
    worst = std::max(worst, std::abs(rep.value(j) - grid.node(j)));
  }
  CHECK(worst <= 0.05);
}

TEST_CASE("empirical quantiles input policy") {
  const QuantileGrid grid(4);
  const SupportInterval support(0.0, 1.0);
  try {
    (void)empirical_quantiles(std::vector<double>{}, grid, support);
    FAIL("expected empty_sample");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::empty_sample);
  }
  const std::vector<double> outside{0.5, 1.5};
  CHECK_THROWS_AS(empirical_quantiles(outside, grid, support), Error);
  const QuantileRep clipped =
      empirical_quantiles(outside, grid, support, OutOfSupportPolicy::clip);
  CHECK(clipped.value(3) == 1.0);
}

TEST_CASE("cdf of the identity quantile is the identity up to half a cell") {
  const int m = 64;
  const QuantileGrid grid(m);
  const SupportInterval support(0.0, 1.0);
  const QuantileRep rep = oracles::uniform_rep(0.0, 1.0, grid, support);
  const CdfRep cdf = cdf_from_quantile(rep);
  for (int j = 0; j < m; ++j) {
    const double x = rep.value(j);
    CHECK(std::abs(cdf(x) - x) <= 1.0 / (2.0 * m) + 1e-12);
  }
}

TEST_CASE("cdf of a point mass steps from zero to one") {
  const QuantileGrid grid(16);
  const SupportInterval support(0.0, 1.0);
  const QuantileRep rep(grid, std::vector<double>(16, 0.3), support);
  const CdfRep cdf = cdf_from_quantile(rep);
  CHECK(cdf(0.2999) == 0.0);
  CHECK(cdf(0.3) == 1.0);
  CHECK(cdf(0.8) == 1.0);
}

TEST_CASE("cdf of Unif[0,2] evaluates to one half at one") {
  const int m = 200;
  const QuantileGrid grid(m);
  const SupportInterval support(0.0, 2.0);
  const QuantileRep rep = oracles::uniform_rep(0.0, 2.0, grid, support);
  const CdfRep cdf = cdf_from_quantile(rep);
  CHECK(std::abs(cdf(1.0) - 0.5) <= 1.0 / (2.0 * m));
}

TEST_CASE("quantile of the uniform cdf is exact at the nodes") {
  const SupportInterval support(0.0, 1.0);
  const CdfRep cdf({0.0, 1.0}, {0.0, 1.0}, support);
  const QuantileGrid grid(32);
  const QuantileRep rep = quantile_from_cdf(cdf, grid);
  for (int j = 0; j < grid.size(); ++j) CHECK(rep.value(j) == grid.node(j));
}

TEST_CASE("plateau inversion returns the left endpoint") {
  const SupportInterval support(0.0, 1.0);
  const CdfRep cdf({0.0, 0.4, 0.8, 1.0}, {0.0, 0.5, 0.5, 1.0}, support);
  const QuantileGrid grid(5);  // odd m puts u = 0.5 on the grid
  const QuantileRep rep = quantile_from_cdf(cdf, grid);
  CHECK(rep.value(2) == 0.4);  // u = 0.5: inf over the plateau [0.4, 0.8]
  CHECK(rep.value(1) < 0.4);   // u = 0.3
  CHECK(rep.value(3) > 0.8);   // u = 0.7
}

TEST_CASE("piecewise-linear cdf inversion by hand") {
  const SupportInterval support(0.0, 2.0);
  const CdfRep cdf({0.0, 1.0, 2.0}, {0.0, 0.25, 1.0}, support);
  const QuantileGrid grid(4);  // nodes .125 .375 .625 .875
  const QuantileRep rep = quantile_from_cdf(cdf, grid);
  CHECK(rep.value(2) == doctest::Approx(1.5).epsilon(1e-14));
}

TEST_CASE("cdf/quantile round trip stays within one grid cell") {
  Rng rng(21);
  const QuantileGrid grid(50);
  const SupportInterval support(-1.0, 3.0);
  for (int rep_i = 0; rep_i < 50; ++rep_i) {
    const QuantileRep rep = oracles::random_rep(rng, grid, support);
    const QuantileRep back = quantile_from_cdf(cdf_from_quantile(rep), grid);
    double max_gap = 0.0;
    for (int j = 0; j + 1 < grid.size(); ++j) {
      max_gap = std::max(max_gap, rep.value(j + 1) - rep.value(j));
    }
    for (int j = 0; j < grid.size(); ++j) {
      CHECK(std::abs(back.value(j) - rep.value(j)) <= max_gap + 1e-9);
    }
  }
}

TEST_CASE("inversion Galois connection holds up to one grid cell") {
  Rng rng(22);
  const QuantileGrid grid(40);
  const SupportInterval support(0.0, 1.0);
  const double cell_u = grid.step();
  for (int rep_i = 0; rep_i < 20; ++rep_i) {
    const QuantileRep rep = oracles::random_rep(rng, grid, support);
    const CdfRep cdf = cdf_from_quantile(rep);
    const QuantileRep inv = quantile_from_cdf(cdf, grid);
    double cell_x = 0.0;
    for (int j = 0; j + 1 < grid.size(); ++j) {
      cell_x = std::max(cell_x, rep.value(j + 1) - rep.value(j));
    }
    for (double x : cdf.knots()) {
      for (int j = 0; j < grid.size(); ++j) {
        const double u = grid.node(j);
        if (cdf(x) >= u + cell_u) CHECK(inv.value(j) <= x + cell_x + 1e-9);
        if (inv.value(j) <= x - cell_x) CHECK(cdf(x) >= u - cell_u - 1e-9);
      }
    }
  }
}

TEST_CASE("linearize_cdf leaves an already piecewise-linear cdf alone") {
  const QuantileGrid grid(100);
  const SupportInterval support(0.0, 1.0);
  const QuantileRep rep = oracles::uniform_rep(0.0, 1.0, grid, support);
  const CdfRep lin = linearize_cdf(rep, 0.25);
  for (double x : {0.1, 0.33, 0.5, 0.77}) {
    CHECK(lin(x) == doctest::Approx(x).epsilon(1e-2));
  }
}

TEST_CASE("linearize_cdf ramps a point mass over one cell") {
  const QuantileGrid grid(32);
  const SupportInterval support(0.0, 1.0);
  const QuantileRep rep(grid, std::vector<double>(32, 0.37), support);
  const CdfRep lin = linearize_cdf(rep, 0.1);
  // Mass confined to the cell containing 0.37.
  CHECK(lin(0.3) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(lin(0.5) == doctest::Approx(1.0).epsilon(1e-9));
  const double dw = wasserstein_distance(rep, quantile_from_cdf(lin, grid));
  CHECK(dw <= 0.1);
}

TEST_CASE("linearize_cdf perturbs a truncated Gaussian by at most b") {
  const QuantileGrid grid(500);
  const TruncatedGaussianParams params{0.5, 0.2, SupportInterval(0.0, 1.0)};
  const QuantileRep rep = truncnorm_rep(params, grid);
  const double b = 0.01;
  const QuantileRep back = linearized(rep, b);
  CHECK(wasserstein_distance(rep, back) <= b);
}

TEST_CASE("linearize_cdf rejects an invalid increment") {
  const QuantileGrid grid(8);
  const SupportInterval support(0.0, 1.0);
  const QuantileRep rep = oracles::uniform_rep(0.0, 1.0, grid, support);
  CHECK_THROWS_AS(linearize_cdf(rep, 0.0), Error);
  CHECK_THROWS_AS(linearize_cdf(rep, 1.5), Error);
}
