#pragma once

namespace wtg {

double normal_pdf(double x);
double normal_cdf(double x);

/// Inverse standard normal CDF: rational approximation (|error| < 1e-9)
/// refined by one Newton step, giving close to full double precision.
/// Throws invalid_probability outside (0,1).
double normal_quantile(double p);

}  // namespace wtg
