#include "wtg/truncated_gaussian.hpp"

#include <cmath>

#include "wtg/error.hpp"
#include "wtg/normal.hpp"

namespace wtg {

namespace {

struct Standardized {
  double alpha;      // (lo - mu) / sigma
  double beta;       // (hi - mu) / sigma
  double phi_alpha;  // Phi(alpha)
  double phi_beta;   // Phi(beta)
};

Standardized standardize(const TruncatedGaussianParams& p, const char* op) {
  if (!(p.sigma > 0.0)) {
    fail(ErrorCode::invalid_argument, op, "sigma must be positive");
  }
  Standardized s;
  s.alpha = (p.interval.lo - p.mu) / p.sigma;
  s.beta = (p.interval.hi - p.mu) / p.sigma;
  s.phi_alpha = normal_cdf(s.alpha);
  s.phi_beta = normal_cdf(s.beta);
  if (!(s.phi_beta > s.phi_alpha)) {
    fail(ErrorCode::numerical_overflow, op,
         "truncation interval carries no Gaussian mass at this precision");
  }
  return s;
}

}  // namespace

double truncnorm_cdf(const TruncatedGaussianParams& p, double x) {
  const Standardized s = standardize(p, "truncnorm_cdf");
  if (x <= p.interval.lo) return 0.0;
  if (x >= p.interval.hi) return 1.0;
  const double z = (x - p.mu) / p.sigma;
  return (normal_cdf(z) - s.phi_alpha) / (s.phi_beta - s.phi_alpha);
}

double truncnorm_quantile(const TruncatedGaussianParams& p, double u) {
  if (!(u > 0.0) || !(u < 1.0)) {
    fail(ErrorCode::invalid_probability, "truncnorm_quantile",
         "u must lie strictly inside (0,1)");
  }
  const Standardized s = standardize(p, "truncnorm_quantile");
  const double a = s.phi_alpha + u * (s.phi_beta - s.phi_alpha);
  double x = p.mu + p.sigma * normal_quantile(a);
  return p.interval.clamp(x);
}

QuantileRep truncnorm_rep(const TruncatedGaussianParams& p, const QuantileGrid& grid) {
  std::vector<double> values(static_cast<std::size_t>(grid.size()));
  for (int j = 0; j < grid.size(); ++j) {
    values[static_cast<std::size_t>(j)] = truncnorm_quantile(p, grid.node(j));
  }
  return QuantileRep(grid, std::move(values), p.interval);
}

FlowParams flow_params(double t) {
  if (!(t >= 0.0) || !(t <= 1.0)) {
    fail(ErrorCode::time_out_of_range, "flow_params", "t must lie in [0,1]");
  }
  constexpr double pi = 3.14159265358979323846;
  FlowParams flow{
      TruncatedGaussianParams{0.1 + 0.8 * t, 0.6 + 0.2 * std::sin(10.0 * pi * t),
                              SupportInterval{0.0, 1.0}},
      0.8,
      2.0 * pi * std::cos(10.0 * pi * t),
  };
  return flow;
}

double truncnorm_wtg(const FlowParams& flow, double x) {
  const TruncatedGaussianParams& p = flow.dist;
  if (!(x > p.interval.lo) || !(x < p.interval.hi)) {
    fail(ErrorCode::out_of_support, "truncnorm_wtg",
         "x must lie strictly inside the truncation interval");
  }
  const Standardized s = standardize(p, "truncnorm_wtg");
  const double mu_dot = flow.mu_dot;
  const double sigma_dot = flow.sigma_dot;

  const double fx = (normal_cdf((x - p.mu) / p.sigma) - s.phi_alpha) /
                    (s.phi_beta - s.phi_alpha);

  // d/dt of the standardized endpoints: alpha' = -(mu/sigma-type ratio)',
  // beta' = -(sigma'/sigma^2 + ratio'), with ratio = (mu - lo)/sigma scaled
  // to the [0,1]-style parameterization below.
  const double ratio_dot =
      (mu_dot * p.sigma - (p.mu - p.interval.lo) * sigma_dot) / (p.sigma * p.sigma);
  const double beta_drop =
      sigma_dot * p.interval.width() / (p.sigma * p.sigma) + ratio_dot;  // -beta'
  const double alpha_drop = ratio_dot;                                  // -alpha'

  const double a = (1.0 - fx) * s.phi_alpha + fx * s.phi_beta;
  if (!(a > 0.0) || !(a < 1.0)) {
    fail(ErrorCode::numerical_overflow, "truncnorm_wtg",
         "normal density underflow near the interval edge");
  }
  const double denom = normal_pdf(normal_quantile(a));
  if (!(denom > 1e-290)) {
    fail(ErrorCode::numerical_overflow, "truncnorm_wtg",
         "normal density underflow near the interval edge");
  }
  const double numer =
      fx * beta_drop * normal_pdf(s.beta) + (1.0 - fx) * alpha_drop * normal_pdf(s.alpha);

  const double result =
      mu_dot + (x - p.mu) * sigma_dot / p.sigma - p.sigma * numer / denom;
  if (!std::isfinite(result)) {
    fail(ErrorCode::numerical_overflow, "truncnorm_wtg",
         "normal density underflow near the interval edge");
  }
  return result;
}

double wtg_closed_form(double t, double x) {
  if (!(t > 0.0) || !(t < 1.0)) {
    fail(ErrorCode::time_out_of_range, "wtg_closed_form", "t must lie strictly inside (0,1)");
  }
  return truncnorm_wtg(flow_params(t), x);
}

}  // namespace wtg
