#pragma once

namespace tern {

// Quantile of the standard normal distribution (inverse CDF).
// Rational approximation with absolute error below 1e-9 on (0,1).
// Throws UsageError for p outside (0,1).
double norm_quantile(double p);

// CDF of the standard normal distribution, accurate to ~1e-15.
double norm_cdf(double x);

// log density of N(mean, sd^2) at z. sd must be positive.
double norm_log_pdf(double z, double mean, double sd);

}  // namespace tern
