#include "tern/estimators.hpp"

#include <cmath>
#include <numeric>

#include "tern/errors.hpp"
#include "tern/math/normal.hpp"
#include "tern/math/student_t.hpp"

namespace tern {

namespace {

void check_level(double level, const char* who) {
  if (!(level > 0.0) || !(level < 1.0)) {
    throw UsageError(std::string(who) + ": level must be in (0,1), got " +
                     std::to_string(level));
  }
}

double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sum_sq_dev(const std::vector<double>& v, double m) {
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s;
}

struct OlsFit {
  Eigen::VectorXd beta;
  Eigen::VectorXd se;     // per-coefficient standard errors
  double sigma_hat;       // residual sd
  long df;                // n - p
};

OlsFit ols_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
  const long n = X.rows();
  const long p = X.cols();
  if (y.size() != n) {
    throw UsageError("regression: X and y row counts differ");
  }
  if (n <= p) {
    throw UsageError("regression: need more observations than coefficients");
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  if (qr.rank() < p) {
    throw NumericError("regression: design matrix is rank deficient");
  }
  OlsFit fit;
  fit.beta = qr.solve(y);
  const Eigen::VectorXd resid = y - X * fit.beta;
  const double rss = resid.squaredNorm();
  fit.df = n - p;
  fit.sigma_hat = std::sqrt(rss / static_cast<double>(fit.df));
  const Eigen::MatrixXd xtx_inv =
      (X.transpose() * X).ldlt().solve(Eigen::MatrixXd::Identity(p, p));
  fit.se = (fit.sigma_hat * fit.sigma_hat * xtx_inv.diagonal().array())
               .sqrt()
               .matrix();
  return fit;
}

Eigen::MatrixXd gravity_design(const std::vector<double>& heights) {
  if (heights.size() < 2) {
    throw UsageError("gravity regression: need at least two observations");
  }
  Eigen::MatrixXd X(static_cast<long>(heights.size()), 2);
  for (std::size_t i = 0; i < heights.size(); ++i) {
    if (!(heights[i] > 0.0)) {
      throw UsageError("gravity regression: heights must be positive");
    }
    X(static_cast<long>(i), 0) = 1.0;
    X(static_cast<long>(i), 1) = std::sqrt(heights[i]);
  }
  return X;
}

// Monotone-decreasing map g = 2 / b1^2 applied to a strictly positive
// b1 interval.
ParameterRegion g_interval_from_b1(const Interval& b1) {
  if (!(b1.lo > 0.0)) {
    throw NumericError(
        "g interval undefined: the slope interval " + b1.describe() +
        " is not strictly positive");
  }
  return ParameterRegion::from_interval(
      Interval::closed(2.0 / (b1.hi * b1.hi), 2.0 / (b1.lo * b1.lo)));
}

}  // namespace

ParameterRegion z_interval(double x_bar, long n, double sigma, double level) {
  check_level(level, "z_interval");
  if (n < 1) throw UsageError("z_interval: n must be at least 1");
  if (!(sigma > 0.0)) throw UsageError("z_interval: sigma must be positive");
  const double z = norm_quantile(1.0 - (1.0 - level) / 2.0);
  const double half = z * sigma / std::sqrt(static_cast<double>(n));
  return ParameterRegion::from_interval(
      Interval::closed(x_bar - half, x_bar + half));
}

ParameterRegion normal_posterior_credible_n(double x_bar, long n,
                                            double prior_mean, double prior_sd,
                                            double obs_sd, double level) {
  check_level(level, "normal_posterior_credible");
  if (n < 1) throw UsageError("normal_posterior_credible: n must be at least 1");
  if (!(prior_sd > 0.0) || !(obs_sd > 0.0)) {
    throw UsageError("normal_posterior_credible: sds must be positive");
  }
  const double prior_prec = 1.0 / (prior_sd * prior_sd);
  const double data_prec = static_cast<double>(n) / (obs_sd * obs_sd);
  const double post_prec = prior_prec + data_prec;
  const double post_mean = (prior_mean * prior_prec + x_bar * data_prec) / post_prec;
  const double post_sd = std::sqrt(1.0 / post_prec);
  const double z = norm_quantile(1.0 - (1.0 - level) / 2.0);
  return ParameterRegion::from_interval(
      Interval::closed(post_mean - z * post_sd, post_mean + z * post_sd));
}

ParameterRegion normal_posterior_credible(double x, double prior_mean,
                                          double prior_sd, double obs_sd,
                                          double level) {
  return normal_posterior_credible_n(x, 1, prior_mean, prior_sd, obs_sd, level);
}

ParameterRegion t_interval(const std::vector<double>& data, double level) {
  check_level(level, "t_interval");
  const long n = static_cast<long>(data.size());
  if (n < 2) throw UsageError("t_interval: need at least 2 observations");
  const double m = mean_of(data);
  const double ss = sum_sq_dev(data, m);
  if (!(ss > 0.0)) {
    throw UsageError("t_interval: sample variance is zero");
  }
  const double s = std::sqrt(ss / static_cast<double>(n - 1));
  const double tq =
      t_quantile(1.0 - (1.0 - level) / 2.0, static_cast<double>(n - 1));
  const double half = tq * s / std::sqrt(static_cast<double>(n));
  return ParameterRegion::from_interval(Interval::closed(m - half, m + half));
}

ParameterRegion two_sample_diff_interval(const std::vector<double>& a,
                                         const std::vector<double>& b,
                                         double level) {
  check_level(level, "two_sample_diff_interval");
  const long na = static_cast<long>(a.size());
  const long nb = static_cast<long>(b.size());
  if (na < 2 || nb < 2) {
    throw UsageError("two_sample_diff_interval: need at least 2 per group");
  }
  const double ma = mean_of(a);
  const double mb = mean_of(b);
  const double ss = sum_sq_dev(a, ma) + sum_sq_dev(b, mb);
  if (!(ss > 0.0)) {
    throw UsageError("two_sample_diff_interval: pooled variance is zero");
  }
  const long df = na + nb - 2;
  const double sp = std::sqrt(ss / static_cast<double>(df));
  const double se = sp * std::sqrt(1.0 / static_cast<double>(na) +
                                   1.0 / static_cast<double>(nb));
  const double tq = t_quantile(1.0 - (1.0 - level) / 2.0, static_cast<double>(df));
  const double d = ma - mb;
  return ParameterRegion::from_interval(
      Interval::closed(d - tq * se, d + tq * se));
}

ParameterRegion regression_coef_interval(const Eigen::MatrixXd& X,
                                         const Eigen::VectorXd& y, int coord,
                                         double level) {
  check_level(level, "regression_coef_interval");
  if (coord < 0 || coord >= X.cols()) {
    throw UsageError("regression_coef_interval: coord out of range");
  }
  const OlsFit fit = ols_fit(X, y);
  const double b = fit.beta[coord];
  const double se = fit.se[coord];
  if (se == 0.0) {
    return ParameterRegion::from_interval(Interval::point(b));
  }
  const double tq =
      t_quantile(1.0 - (1.0 - level) / 2.0, static_cast<double>(fit.df));
  return ParameterRegion::from_interval(
      Interval::closed(b - tq * se, b + tq * se));
}

ParameterRegion gravity_g_interval(const std::vector<double>& heights,
                                   const std::vector<double>& times,
                                   double level) {
  if (heights.size() != times.size()) {
    throw UsageError("gravity_g_interval: heights and times lengths differ");
  }
  const Eigen::MatrixXd X = gravity_design(heights);
  Eigen::VectorXd y(static_cast<long>(times.size()));
  for (std::size_t i = 0; i < times.size(); ++i) y[static_cast<long>(i)] = times[i];
  const ParameterRegion b1 = regression_coef_interval(X, y, 1, level);
  return g_interval_from_b1(b1.hull1());
}

ParameterRegion RegionEstimator::operator()(const Dataset& data) const {
  switch (kind) {
    case Kind::ZInterval: {
      if (data.kind != Dataset::Kind::Normal || data.x.empty()) {
        throw UsageError("z estimator expects a non-empty normal dataset");
      }
      return z_interval(mean_of(data.x), static_cast<long>(data.x.size()), sigma,
                        level);
    }
    case Kind::TInterval: {
      if (data.kind != Dataset::Kind::Normal) {
        throw UsageError("t estimator expects a normal dataset");
      }
      return t_interval(data.x, level);
    }
    case Kind::TwoSampleTInterval: {
      if (data.kind != Dataset::Kind::TwoSample) {
        throw UsageError("two-sample estimator expects a two-sample dataset");
      }
      return two_sample_diff_interval(data.a, data.b, level);
    }
    case Kind::NormalPosteriorCredible:
    case Kind::NormalPosteriorHPD: {
      // The normal posterior is symmetric, so the HPD set and the central
      // interval coincide; both kinds share the computation.
      if (data.kind != Dataset::Kind::Normal || data.x.empty()) {
        throw UsageError("posterior estimator expects a non-empty normal dataset");
      }
      return normal_posterior_credible_n(mean_of(data.x),
                                         static_cast<long>(data.x.size()),
                                         prior_mean, prior_sd, obs_sd, level);
    }
    case Kind::RegressionCoefficientInterval: {
      if (data.kind != Dataset::Kind::Gravity) {
        throw UsageError("regression estimator expects a gravity dataset");
      }
      if (g_transform) {
        return gravity_g_interval(data.height, data.time, level);
      }
      const Eigen::MatrixXd X = gravity_design(data.height);
      Eigen::VectorXd y(static_cast<long>(data.time.size()));
      for (std::size_t i = 0; i < data.time.size(); ++i) {
        y[static_cast<long>(i)] = data.time[i];
      }
      return regression_coef_interval(X, y, coord, level);
    }
  }
  throw UsageError("RegionEstimator: invalid kind");
}

std::string RegionEstimator::kind_name() const {
  switch (kind) {
    case Kind::ZInterval:
      return "z";
    case Kind::TInterval:
      return "t";
    case Kind::TwoSampleTInterval:
      return "two_sample_t";
    case Kind::NormalPosteriorCredible:
      return "credible";
    case Kind::NormalPosteriorHPD:
      return "hpd";
    case Kind::RegressionCoefficientInterval:
      return "regression";
  }
  return "?";
}

}  // namespace tern
