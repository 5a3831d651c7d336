#include "wtg/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace wtg {

namespace {

void check_same_geometry(const QuantileRep& a, const QuantileRep& b, const char* op) {
  if (!same_geometry(a, b)) {
    fail(ErrorCode::grid_mismatch, op, "representations use different grids or supports");
  }
}

void check_grid(const TangentVector& v, const QuantileRep& ref, const char* op) {
  if (!(v.grid() == ref.grid())) {
    fail(ErrorCode::grid_mismatch, op, "tangent vector grid does not match reference");
  }
}

}  // namespace

TangentVector::TangentVector(QuantileGrid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (static_cast<int>(values_.size()) != grid_.size()) {
    fail(ErrorCode::invalid_argument, "TangentVector", "value count does not match grid");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) {
      fail(ErrorCode::invalid_argument, "TangentVector", "entries must be finite");
    }
  }
}

double TangentVector::eval(double u) const {
  const int m = grid_.size();
  if (u <= grid_.node(0)) return values_.front();
  if (u >= grid_.node(m - 1)) return values_.back();
  const double pos = u * m - 0.5;
  int i = static_cast<int>(pos);
  if (i >= m - 1) i = m - 2;
  const double frac = pos - i;
  const auto k = static_cast<std::size_t>(i);
  return values_[k] + frac * (values_[k + 1] - values_[k]);
}

double wasserstein_distance(const QuantileRep& a, const QuantileRep& b) {
  check_same_geometry(a, b, "wasserstein_distance");
  const auto va = a.values();
  const auto vb = b.values();
  double acc = 0.0;
  for (std::size_t j = 0; j < va.size(); ++j) {
    const double d = va[j] - vb[j];
    acc += d * d;
  }
  return std::sqrt(acc / static_cast<double>(va.size()));
}

double transport_map_eval(const QuantileRep& from, const QuantileRep& to, double x) {
  check_same_geometry(from, to, "transport_map_eval");
  if (!from.support().contains(x)) {
    fail(ErrorCode::out_of_support, "transport_map_eval", "x outside support");
  }
  const double u = cdf_from_quantile(from)(x);
  return to.quantile(u);
}

TangentVector log_map(const QuantileRep& ref, const QuantileRep& target) {
  check_same_geometry(ref, target, "log_map");
  const auto vr = ref.values();
  const auto vt = target.values();
  std::vector<double> diff(vr.size());
  for (std::size_t j = 0; j < vr.size(); ++j) diff[j] = vt[j] - vr[j];
  return TangentVector(ref.grid(), std::move(diff));
}

QuantileRep exp_map(const QuantileRep& ref, const TangentVector& v) {
  check_grid(v, ref, "exp_map");
  const auto vr = ref.values();
  const auto vv = v.values();
  std::vector<double> candidate(vr.size());
  for (std::size_t j = 0; j < vr.size(); ++j) {
    candidate[j] = ref.support().clamp(vr[j] + vv[j]);
  }
  if (!std::is_sorted(candidate.begin(), candidate.end())) {
    std::sort(candidate.begin(), candidate.end());
  }
  return QuantileRep(ref.grid(), std::move(candidate), ref.support());
}

TangentVector parallel_transport(const TangentVector& v, const QuantileRep& from,
                                 const QuantileRep& to) {
  check_grid(v, from, "parallel_transport");
  check_same_geometry(from, to, "parallel_transport");
  // g o F_from^{-1} o F_to evaluated at Q_to(u_j) is g(Q_from(u_j)): the
  // quantile coordinates are invariant, only the base point changes.
  return TangentVector(v.grid(), std::vector<double>(v.values().begin(), v.values().end()));
}

double tangent_inner(const TangentVector& v1, const TangentVector& v2,
                     const QuantileRep& ref) {
  check_grid(v1, ref, "tangent_inner");
  check_grid(v2, ref, "tangent_inner");
  const auto a = v1.values();
  const auto b = v2.values();
  double acc = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) acc += a[j] * b[j];
  return acc / static_cast<double>(a.size());
}

double tangent_norm(const TangentVector& v, const QuantileRep& ref) {
  check_grid(v, ref, "tangent_norm");
  const auto a = v.values();
  double acc = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) acc += a[j] * a[j];
  return std::sqrt(acc / static_cast<double>(a.size()));
}

}  // namespace wtg
