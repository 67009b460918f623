#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "tern/dataset.hpp"
#include "tern/region.hpp"

namespace tern {

// Closed-form interval estimators. All return closed, bounded, non-empty
// one-dimensional regions (possibly degenerate points).

// Known-sigma interval for a normal mean: x_bar +/- z * sigma / sqrt(n).
ParameterRegion z_interval(double x_bar, long n, double sigma, double level);

// Central credible interval of the conjugate normal posterior after one
// observation x with known observation sd.
ParameterRegion normal_posterior_credible(double x, double prior_mean,
                                          double prior_sd, double obs_sd,
                                          double level);

// Same posterior with n observations summarized by their mean.
ParameterRegion normal_posterior_credible_n(double x_bar, long n,
                                            double prior_mean, double prior_sd,
                                            double obs_sd, double level);

// One-sample t interval; needs n >= 2 and positive sample variance.
ParameterRegion t_interval(const std::vector<double>& data, double level);

// Pooled-variance t interval for mu_a - mu_b (the model asserts a common
// variance across groups).
ParameterRegion two_sample_diff_interval(const std::vector<double>& a,
                                         const std::vector<double>& b,
                                         double level);

// t interval for one OLS coefficient. X is the full design matrix (including
// the intercept column if wanted).
ParameterRegion regression_coef_interval(const Eigen::MatrixXd& X,
                                         const Eigen::VectorXd& y, int coord,
                                         double level);

// Free-fall regression T = b0 + b1 * sqrt(height): the b1 interval mapped
// through g = 2 / b1^2. Requires the b1 interval to be strictly positive.
ParameterRegion gravity_g_interval(const std::vector<double>& heights,
                                   const std::vector<double>& times,
                                   double level);

// Configured estimator object: a map from a Dataset to a region together with
// the stated confidence or credibility level.
struct RegionEstimator {
  enum class Kind {
    ZInterval,
    TInterval,
    TwoSampleTInterval,
    NormalPosteriorCredible,
    NormalPosteriorHPD,
    RegressionCoefficientInterval,
  };

  Kind kind = Kind::ZInterval;
  double level = 0.95;
  double sigma = 1.0;        // ZInterval
  double prior_mean = 0.0;   // posterior kinds
  double prior_sd = 1.0;
  double obs_sd = 1.0;
  int coord = 1;             // regression coefficient index
  bool g_transform = true;   // regression: report the induced g interval

  ParameterRegion operator()(const Dataset& data) const;
  std::string kind_name() const;
};

}  // namespace tern
