#pragma once

namespace spectral_clt {

/// Standard normal CDF.
double normal_cdf(double x);
/// 1 - normal_cdf(x) without cancellation.
double normal_sf(double x);
/// Inverse standard normal CDF; throws DomainError outside (0, 1).
double normal_quantile(double q);

}  // namespace spectral_clt
