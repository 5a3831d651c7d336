#pragma once

#include "wtg/quantile.hpp"
#include "wtg/support.hpp"

namespace wtg {

/// Gaussian restricted to an interval, parameterized by the mean and
/// standard deviation of the untruncated distribution.
struct TruncatedGaussianParams {
  double mu;
  double sigma;
  SupportInterval interval{0.0, 1.0};
};

double truncnorm_cdf(const TruncatedGaussianParams& p, double x);

/// Q(u) = mu + sigma * Phi^{-1}(Phi(alpha) + u (Phi(beta) - Phi(alpha)))
/// with alpha, beta the standardized interval endpoints.
double truncnorm_quantile(const TruncatedGaussianParams& p, double u);

/// Quantile representation sampled on the grid.
QuantileRep truncnorm_rep(const TruncatedGaussianParams& p, const QuantileGrid& grid);

/// A truncated-Gaussian family together with its parameter velocities.
struct FlowParams {
  TruncatedGaussianParams dist;
  double mu_dot;
  double sigma_dot;
};

/// Simulation target flow on [0,1]: mean 0.1 + 0.8 t, standard deviation
/// 0.6 + 0.2 sin(10 pi t), with derivatives 0.8 and 2 pi cos(10 pi t).
FlowParams flow_params(double t);

/// Closed-form temporal gradient of a truncated-Gaussian family with fixed
/// truncation interval, evaluated at x in the interval's interior. Throws
/// numerical_overflow when the normal density in the denominator underflows
/// instead of extrapolating.
double truncnorm_wtg(const FlowParams& flow, double x);

/// truncnorm_wtg along the simulation target flow; t and x interior.
double wtg_closed_form(double t, double x);

}  // namespace wtg
