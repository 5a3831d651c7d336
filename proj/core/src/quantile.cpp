#include "wtg/quantile.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

namespace wtg {

namespace {

void check_values(const QuantileGrid& grid, const std::vector<double>& values,
                  const SupportInterval& support, const char* op) {
  if (static_cast<int>(values.size()) != grid.size()) {
    fail(ErrorCode::invalid_argument, op, "value count does not match grid size");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]) || !support.contains(values[i])) {
      fail(ErrorCode::invalid_argument, op,
           "value " + std::to_string(values[i]) + " outside support");
    }
    if (i > 0 && values[i] < values[i - 1]) {
      fail(ErrorCode::invalid_argument, op, "values must be nondecreasing");
    }
  }
}

// Piecewise-linear interpolation of y over the midpoint grid at u, constant
// beyond the first/last node.
double interp_on_grid(const QuantileGrid& grid, std::span<const double> y, double u) {
  const int m = grid.size();
  if (u <= grid.node(0)) return y[0];
  if (u >= grid.node(m - 1)) return y[static_cast<std::size_t>(m - 1)];
  // Nodes are equispaced: u_i = (2i+1)/(2m) => i = u*m - 1/2.
  const double pos = u * m - 0.5;
  int i = static_cast<int>(pos);
  if (i >= m - 1) i = m - 2;
  const double frac = pos - i;
  const auto k = static_cast<std::size_t>(i);
  return y[k] + frac * (y[k + 1] - y[k]);
}

}  // namespace

QuantileRep::QuantileRep(QuantileGrid grid, std::vector<double> values,
                         SupportInterval support)
    : grid_(grid), support_(support), values_(std::move(values)) {
  check_values(grid_, values_, support_, "QuantileRep");
}

double QuantileRep::quantile(double u) const {
  return interp_on_grid(grid_, values_, u);
}

CdfRep::CdfRep(std::vector<double> knots, std::vector<double> values,
               SupportInterval support)
    : knots_(std::move(knots)), values_(std::move(values)), support_(support) {
  if (knots_.empty() || knots_.size() != values_.size()) {
    fail(ErrorCode::invalid_argument, "CdfRep", "knots/values size mismatch or empty");
  }
  for (std::size_t i = 0; i < knots_.size(); ++i) {
    if (!std::isfinite(knots_[i]) || !support_.contains(knots_[i])) {
      fail(ErrorCode::invalid_argument, "CdfRep", "knot outside support");
    }
    if (i > 0 && !(knots_[i] > knots_[i - 1])) {
      fail(ErrorCode::invalid_argument, "CdfRep", "knots must be strictly increasing");
    }
    if (i > 0 && values_[i] < values_[i - 1]) {
      fail(ErrorCode::invalid_argument, "CdfRep", "values must be nondecreasing");
    }
  }
  if (values_.front() < 0.0 || values_.back() != 1.0) {
    fail(ErrorCode::invalid_argument, "CdfRep",
         "first value must be >= 0 and last value must be 1");
  }
}

double CdfRep::operator()(double x) const {
  if (x < knots_.front()) return 0.0;
  if (x >= knots_.back()) return values_.back();
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
  const auto k = static_cast<std::size_t>(it - knots_.begin());  // knots_[k-1] <= x < knots_[k]
  const double x0 = knots_[k - 1];
  const double x1 = knots_[k];
  const double frac = (x - x0) / (x1 - x0);
  return values_[k - 1] + frac * (values_[k] - values_[k - 1]);
}

QuantileRep empirical_quantiles(std::span<const double> sample, const QuantileGrid& grid,
                                const SupportInterval& support,
                                OutOfSupportPolicy policy) {
  if (sample.empty()) {
    fail(ErrorCode::empty_sample, "empirical_quantiles", "sample is empty");
  }
  std::vector<double> sorted(sample.begin(), sample.end());
  for (double& x : sorted) {
    if (!std::isfinite(x)) {
      fail(ErrorCode::value_outside_support, "empirical_quantiles",
           "non-finite sample value");
    }
    if (!support.contains(x)) {
      if (policy == OutOfSupportPolicy::reject) {
        fail(ErrorCode::value_outside_support, "empirical_quantiles",
             "sample value " + std::to_string(x) + " outside support");
      }
      x = support.clamp(x);
    }
  }
  std::sort(sorted.begin(), sorted.end());

  const auto n = static_cast<double>(sorted.size());
  const int m = grid.size();
  std::vector<double> values(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    // Order statistic X_(ceil(u_j * n)), 1-based.
    auto rank = static_cast<std::size_t>(std::ceil(grid.node(j) * n));
    if (rank < 1) rank = 1;
    if (rank > sorted.size()) rank = sorted.size();
    values[static_cast<std::size_t>(j)] = sorted[rank - 1];
  }
  return QuantileRep(grid, std::move(values), support);
}

CdfRep cdf_from_quantile(const QuantileRep& q) {
  const int m = q.size();
  const auto vals = q.values();

  // Ramp width for representing interior jumps (atoms from tied quantile
  // values) as steep segments.
  const double ramp = q.support().width() * 0x1.0p-40;

  std::vector<double> knots;
  std::vector<double> levels;
  knots.reserve(static_cast<std::size_t>(m) + 2);
  levels.reserve(static_cast<std::size_t>(m) + 2);

  int i = 0;
  while (i < m) {
    int j = i;
    while (j + 1 < m && vals[static_cast<std::size_t>(j + 1)] == vals[static_cast<std::size_t>(i)]) ++j;
    const double x = vals[static_cast<std::size_t>(i)];
    const bool last_group = (j == m - 1);
    // sup{u : Q(u) <= x}: the top of the tie group; 1 for the top group
    // because Q extends flat past the last node.
    const double level = last_group ? 1.0 : q.grid().node(j);
    if (j > i && !knots.empty()) {
      // Tie group = atom: keep the jump one ramp wide. The pre-knot carries
      // the level at which the incoming segment enters the group.
      const double pre_x = x - ramp;
      if (pre_x > knots.back()) {
        knots.push_back(pre_x);
        levels.push_back(q.grid().node(i));
      }
    }
    knots.push_back(x);
    levels.push_back(level);
    i = j + 1;
  }
  return CdfRep(std::move(knots), std::move(levels), q.support());
}

QuantileRep quantile_from_cdf(const CdfRep& c, const QuantileGrid& grid) {
  const auto knots = c.knots();
  const auto levels = c.values();
  const int m = grid.size();
  std::vector<double> values(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    const double u = grid.node(j);
    // inf{x : F(x) >= u}: first knot index whose level reaches u.
    const auto it = std::lower_bound(levels.begin(), levels.end(), u);
    const auto k = static_cast<std::size_t>(it - levels.begin());
    double x;
    if (k == 0) {
      x = knots[0];
    } else {
      // lower_bound guarantees levels[k-1] < u <= levels[k].
      const double frac = (u - levels[k - 1]) / (levels[k] - levels[k - 1]);
      x = knots[k - 1] + frac * (knots[k] - knots[k - 1]);
    }
    values[static_cast<std::size_t>(j)] = c.support().clamp(x);
  }
  return QuantileRep(grid, std::move(values), c.support());
}

CdfRep linearize_cdf(const QuantileRep& q, double b) {
  const double width = q.support().width();
  if (!(b > 0.0) || !(b < width)) {
    fail(ErrorCode::invalid_increment, "linearize_cdf",
         "increment must satisfy 0 < b < support width");
  }
  const CdfRep fine = cdf_from_quantile(q);
  const int cells = static_cast<int>(std::ceil(width / b - 1e-12));
  const double step = width / cells;

  std::vector<double> knots(static_cast<std::size_t>(cells) + 1);
  std::vector<double> values(static_cast<std::size_t>(cells) + 1);
  for (int l = 0; l <= cells; ++l) {
    const double x = (l == cells) ? q.support().hi : q.support().lo + l * step;
    knots[static_cast<std::size_t>(l)] = x;
    values[static_cast<std::size_t>(l)] = fine(x);
  }
  values.back() = 1.0;
  return CdfRep(std::move(knots), std::move(values), q.support());
}

QuantileRep linearized(const QuantileRep& q, double b) {
  return quantile_from_cdf(linearize_cdf(q, b), q.grid());
}

}  // namespace wtg
