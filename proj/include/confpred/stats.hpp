#pragma once

namespace confpred {

/// Standard normal CDF.
double normal_cdf(double z);

/// Standard normal quantile (Acklam's rational approximation plus one
/// Halley refinement; accurate to ~1e-14). Throws input_error outside (0,1).
double normal_quantile(double p);

/// alpha upper quantile of |Z|, Z standard normal: P(|Z| > q) = alpha.
double normal_abs_upper_quantile(double alpha);

/// alpha upper quantile of |T|, T Student t with 2 degrees of freedom
/// (closed form from the t(2) CDF).
double t2_abs_upper_quantile(double alpha);

}  // namespace confpred
