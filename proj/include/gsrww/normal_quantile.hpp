#pragma once

namespace gsrww {

/// Standard normal CDF.
double normal_cdf(double x);

/// Inverse standard normal CDF: rational approximation refined by one
/// Halley step against erfc. Absolute error below 1e-12 on (1e-300, 1-1e-16).
double normal_quantile(double p);

}  // namespace gsrww
