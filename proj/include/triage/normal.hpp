#pragma once

namespace triage {

/// Standard normal CDF.
double normal_cdf(double x);

/// Standard normal quantile for p in (0, 1). Returns -inf / +inf at the
/// endpoints.
double normal_quantile(double p);

} // namespace triage
