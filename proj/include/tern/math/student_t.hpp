#pragma once

namespace tern {

// Regularized incomplete beta function I_x(a, b) for a, b > 0 and x in [0, 1].
// Continued-fraction evaluation, absolute error around 1e-14.
double regularized_incomplete_beta(double a, double b, double x);

// CDF of Student's t distribution with df > 0 degrees of freedom.
double t_cdf(double x, double df);

// Quantile of Student's t distribution; absolute error below 1e-7.
// Results are memoized per (df, p) since tests and sweeps reuse a handful of
// levels heavily.
double t_quantile(double p, double df);

}  // namespace tern
