#include "tern/models.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <utility>

#include "tern/errors.hpp"
#include "tern/math/normal.hpp"

namespace tern {

std::optional<Interval> Model::exact_pragmatic_interval(
    double, const Eigen::VectorXd&, double) const {
  return std::nullopt;
}

namespace {

void check_theta_dim(const Eigen::VectorXd& theta, int d, const char* who) {
  if (theta.size() != d) {
    throw UsageError(std::string(who) + ": theta has dimension " +
                     std::to_string(theta.size()) + ", expected " +
                     std::to_string(d));
  }
}

void check_future_len(const FutureSample& z, std::size_t len, const char* who) {
  if (z.values.size() != len) {
    throw UsageError(std::string(who) + ": future sample has length " +
                     std::to_string(z.values.size()) + ", expected " +
                     std::to_string(len));
  }
}

void check_tau(double tau) {
  if (!(tau > 0.5) || !(tau < 1.0)) {
    throw UsageError("accuracy threshold tau must be in (0.5, 1), got " +
                     std::to_string(tau));
  }
}

double mean_of(const std::vector<double>& v, const char* who) {
  if (v.empty()) {
    throw UsageError(std::string(who) + ": empty sample");
  }
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// All theta* with classification dissimilarity below tau, for a model whose
// future experiment is Gaussian with a mean shift linear in (theta* - theta0):
// the dissimilarity is Phi(scale * |theta* - theta0| / (2 sigma)), hence an
// open interval of halfwidth 2 * sigma * Phi^-1(tau) / scale.
Interval gaussian_shift_band(double theta0, double sigma, double scale,
                             double tau) {
  check_tau(tau);
  const double w = 2.0 * sigma * norm_quantile(tau) / scale;
  return Interval::open(theta0 - w, theta0 + w);
}

class NormalMeanModel final : public Model {
 public:
  NormalMeanModel(double sigma, long n_future)
      : sigma_(sigma), n_future_(n_future), names_{"theta"} {
    if (!(sigma > 0.0)) {
      throw UsageError("normal_mean_model: sigma must be positive");
    }
    if (n_future < 1) {
      throw UsageError("normal_mean_model: n_future must be at least 1");
    }
  }

  int param_dim() const override { return 1; }
  const std::vector<std::string>& param_names() const override { return names_; }
  std::size_t future_len() const override {
    return static_cast<std::size_t>(n_future_);
  }
  std::string future_design() const override {
    std::ostringstream os;
    os << n_future_ << " iid normal draw(s), sd " << sigma_;
    return os.str();
  }

  double log_density(const FutureSample& z,
                     const Eigen::VectorXd& theta) const override {
    check_theta_dim(theta, 1, "normal_mean_model");
    check_future_len(z, future_len(), "normal_mean_model");
    double s = 0.0;
    for (double v : z.values) s += norm_log_pdf(v, theta[0], sigma_);
    return s;
  }

  FutureSample sample(const Eigen::VectorXd& theta,
                      RngStream& rng) const override {
    check_theta_dim(theta, 1, "normal_mean_model");
    FutureSample z;
    z.values.reserve(future_len());
    for (long i = 0; i < n_future_; ++i) {
      z.values.push_back(rng.normal(theta[0], sigma_));
    }
    return z;
  }

  Eigen::VectorXd estimate(const Dataset& data) const override {
    if (data.kind != Dataset::Kind::Normal) {
      throw UsageError("normal_mean_model: expected a normal dataset");
    }
    Eigen::VectorXd t(1);
    t[0] = mean_of(data.x, "normal_mean_model::estimate");
    return t;
  }

  Dataset sample_dataset(const Eigen::VectorXd& theta, long n_obs,
                         RngStream& rng) const override {
    check_theta_dim(theta, 1, "normal_mean_model");
    if (n_obs < 1) {
      throw UsageError("normal_mean_model: n_obs must be at least 1");
    }
    std::vector<double> xs;
    xs.reserve(static_cast<std::size_t>(n_obs));
    for (long i = 0; i < n_obs; ++i) xs.push_back(rng.normal(theta[0], sigma_));
    return Dataset::normal(std::move(xs));
  }

  std::optional<Interval> exact_pragmatic_interval(
      double theta0, const Eigen::VectorXd& nuisance, double tau) const override {
    if (nuisance.size() != 0) {
      throw UsageError("normal_mean_model: no nuisance coordinates expected");
    }
    return gaussian_shift_band(theta0, sigma_,
                               std::sqrt(static_cast<double>(n_future_)), tau);
  }

 private:
  double sigma_;
  long n_future_;
  std::vector<std::string> names_;
};

// Shared machinery for the two two-group parameterizations. Future sample
// layout: group a's n_future draws, then group b's.
class TwoSampleBase : public Model {
 public:
  TwoSampleBase(double sigma, long n_future, std::vector<std::string> names,
                const char* who)
      : sigma_(sigma), n_future_(n_future), names_(std::move(names)), who_(who) {
    if (!(sigma > 0.0)) {
      throw UsageError(std::string(who) + ": sigma must be positive");
    }
    if (n_future < 1) {
      throw UsageError(std::string(who) + ": n_future_per_group must be at least 1");
    }
  }

  int param_dim() const override { return 2; }
  const std::vector<std::string>& param_names() const override { return names_; }
  std::size_t future_len() const override {
    return static_cast<std::size_t>(2 * n_future_);
  }
  std::string future_design() const override {
    std::ostringstream os;
    os << n_future_ << " draw(s) per group, sd " << sigma_;
    return os.str();
  }

  // (mu_a, mu_b) for the given parameter vector.
  virtual std::pair<double, double> group_means(
      const Eigen::VectorXd& theta) const = 0;

  double log_density(const FutureSample& z,
                     const Eigen::VectorXd& theta) const override {
    check_theta_dim(theta, 2, who_);
    check_future_len(z, future_len(), who_);
    const auto [ma, mb] = group_means(theta);
    double s = 0.0;
    for (long i = 0; i < n_future_; ++i) {
      s += norm_log_pdf(z.values[static_cast<std::size_t>(i)], ma, sigma_);
    }
    for (long i = 0; i < n_future_; ++i) {
      s += norm_log_pdf(z.values[static_cast<std::size_t>(n_future_ + i)], mb,
                        sigma_);
    }
    return s;
  }

  FutureSample sample(const Eigen::VectorXd& theta,
                      RngStream& rng) const override {
    check_theta_dim(theta, 2, who_);
    const auto [ma, mb] = group_means(theta);
    FutureSample z;
    z.values.reserve(future_len());
    for (long i = 0; i < n_future_; ++i) z.values.push_back(rng.normal(ma, sigma_));
    for (long i = 0; i < n_future_; ++i) z.values.push_back(rng.normal(mb, sigma_));
    return z;
  }

  Dataset sample_dataset(const Eigen::VectorXd& theta, long n_obs,
                         RngStream& rng) const override {
    check_theta_dim(theta, 2, who_);
    if (n_obs < 1) {
      throw UsageError(std::string(who_) + ": n_obs must be at least 1");
    }
    const auto [ma, mb] = group_means(theta);
    std::vector<double> a, b;
    a.reserve(static_cast<std::size_t>(n_obs));
    b.reserve(static_cast<std::size_t>(n_obs));
    for (long i = 0; i < n_obs; ++i) a.push_back(rng.normal(ma, sigma_));
    for (long i = 0; i < n_obs; ++i) b.push_back(rng.normal(mb, sigma_));
    return Dataset::two_sample(std::move(a), std::move(b));
  }

 protected:
  double sigma_;
  long n_future_;
  std::vector<std::string> names_;
  const char* who_;
};

class TwoSampleNormalModel final : public TwoSampleBase {
 public:
  TwoSampleNormalModel(double sigma, long n_future)
      : TwoSampleBase(sigma, n_future, {"mu_a", "mu_b"}, "two_sample_normal_model") {}

  std::pair<double, double> group_means(
      const Eigen::VectorXd& theta) const override {
    return {theta[0], theta[1]};
  }

  Eigen::VectorXd estimate(const Dataset& data) const override {
    if (data.kind != Dataset::Kind::TwoSample) {
      throw UsageError("two_sample_normal_model: expected a two-sample dataset");
    }
    Eigen::VectorXd t(2);
    t[0] = mean_of(data.a, "two_sample_normal_model::estimate (group a)");
    t[1] = mean_of(data.b, "two_sample_normal_model::estimate (group b)");
    return t;
  }

  std::optional<Interval> exact_pragmatic_interval(
      double theta0, const Eigen::VectorXd& nuisance, double tau) const override {
    if (nuisance.size() != 1) {
      throw UsageError("two_sample_normal_model: expected one nuisance value (mu_b)");
    }
    // Only group a's block shifts, n_future_ coordinates.
    return gaussian_shift_band(theta0, sigma_,
                               std::sqrt(static_cast<double>(n_future_)), tau);
  }
};

class TwoSampleDiffModel final : public TwoSampleBase {
 public:
  TwoSampleDiffModel(double sigma, long n_future)
      : TwoSampleBase(sigma, n_future, {"delta", "mu_b"}, "two_sample_diff_model") {}

  std::pair<double, double> group_means(
      const Eigen::VectorXd& theta) const override {
    return {theta[1] + theta[0], theta[1]};
  }

  Eigen::VectorXd estimate(const Dataset& data) const override {
    if (data.kind != Dataset::Kind::TwoSample) {
      throw UsageError("two_sample_diff_model: expected a two-sample dataset");
    }
    const double ma = mean_of(data.a, "two_sample_diff_model::estimate (group a)");
    const double mb = mean_of(data.b, "two_sample_diff_model::estimate (group b)");
    Eigen::VectorXd t(2);
    t[0] = ma - mb;
    t[1] = mb;
    return t;
  }

  std::optional<Interval> exact_pragmatic_interval(
      double theta0, const Eigen::VectorXd& nuisance, double tau) const override {
    if (nuisance.size() != 1) {
      throw UsageError("two_sample_diff_model: expected one nuisance value (mu_b)");
    }
    return gaussian_shift_band(theta0, sigma_,
                               std::sqrt(static_cast<double>(n_future_)), tau);
  }
};

class GravityRegressionModel final : public Model {
 public:
  GravityRegressionModel(std::vector<double> heights, long future_reps)
      : heights_(std::move(heights)),
        future_reps_(future_reps),
        names_{"g", "beta0", "sigma"} {
    if (heights_.size() < 2) {
      throw UsageError("gravity_regression_model: need at least 2 heights");
    }
    bool distinct = false;
    for (double h : heights_) {
      if (!(h > 0.0)) {
        throw UsageError("gravity_regression_model: heights must be positive");
      }
      if (h != heights_.front()) distinct = true;
    }
    if (!distinct) {
      throw UsageError("gravity_regression_model: heights must not all be equal");
    }
    if (future_reps < 1) {
      throw UsageError("gravity_regression_model: future_reps must be at least 1");
    }
    design_.reserve(heights_.size() * static_cast<std::size_t>(future_reps));
    for (long r = 0; r < future_reps; ++r) {
      for (double h : heights_) design_.push_back(std::sqrt(h));
    }
    design_norm_ = 0.0;
    for (double x : design_) design_norm_ += x * x;
    design_norm_ = std::sqrt(design_norm_);
  }

  int param_dim() const override { return 3; }
  const std::vector<std::string>& param_names() const override { return names_; }
  std::size_t future_len() const override { return design_.size(); }
  std::string future_design() const override {
    std::ostringstream os;
    os << heights_.size() << " height(s) x " << future_reps_ << " repetition(s)";
    return os.str();
  }

  double log_density(const FutureSample& z,
                     const Eigen::VectorXd& theta) const override {
    check_theta_dim(theta, 3, "gravity_regression_model");
    check_future_len(z, future_len(), "gravity_regression_model");
    const double b1 = slope_for(theta);
    const double sd = sd_for(theta);
    double s = 0.0;
    for (std::size_t i = 0; i < design_.size(); ++i) {
      s += norm_log_pdf(z.values[i], theta[1] + b1 * design_[i], sd);
    }
    return s;
  }

  FutureSample sample(const Eigen::VectorXd& theta,
                      RngStream& rng) const override {
    check_theta_dim(theta, 3, "gravity_regression_model");
    const double b1 = slope_for(theta);
    const double sd = sd_for(theta);
    FutureSample z;
    z.values.reserve(design_.size());
    for (double x : design_) z.values.push_back(rng.normal(theta[1] + b1 * x, sd));
    return z;
  }

  Eigen::VectorXd estimate(const Dataset& data) const override {
    if (data.kind != Dataset::Kind::Gravity) {
      throw UsageError("gravity_regression_model: expected a gravity dataset");
    }
    const long n = static_cast<long>(data.height.size());
    if (n < 3) {
      throw UsageError("gravity_regression_model: need at least 3 observations");
    }
    Eigen::MatrixXd X(n, 2);
    Eigen::VectorXd y(n);
    for (long i = 0; i < n; ++i) {
      const double h = data.height[static_cast<std::size_t>(i)];
      if (!(h > 0.0)) {
        throw DataError("gravity_regression_model: heights must be positive");
      }
      X(i, 0) = 1.0;
      X(i, 1) = std::sqrt(h);
      y[i] = data.time[static_cast<std::size_t>(i)];
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    if (qr.rank() < 2) {
      throw NumericError("gravity_regression_model: design is rank deficient");
    }
    const Eigen::VectorXd beta = qr.solve(y);
    if (!(beta[1] > 0.0)) {
      throw NumericError(
          "gravity_regression_model: estimated slope is not positive; g is "
          "undefined");
    }
    const double rss = (y - X * beta).squaredNorm();
    Eigen::VectorXd t(3);
    t[0] = 2.0 / (beta[1] * beta[1]);
    t[1] = beta[0];
    t[2] = std::sqrt(rss / static_cast<double>(n - 2));
    return t;
  }

  Dataset sample_dataset(const Eigen::VectorXd& theta, long n_obs,
                         RngStream& rng) const override {
    check_theta_dim(theta, 3, "gravity_regression_model");
    if (n_obs < 1) {
      throw UsageError("gravity_regression_model: n_obs must be at least 1");
    }
    const double b1 = slope_for(theta);
    const double sd = sd_for(theta);
    std::vector<double> hs, ts;
    hs.reserve(static_cast<std::size_t>(n_obs));
    ts.reserve(static_cast<std::size_t>(n_obs));
    for (long i = 0; i < n_obs; ++i) {
      const double h = heights_[static_cast<std::size_t>(i) % heights_.size()];
      hs.push_back(h);
      ts.push_back(rng.normal(theta[1] + b1 * std::sqrt(h), sd));
    }
    return Dataset::gravity(std::move(hs), std::move(ts));
  }

  std::optional<Interval> exact_pragmatic_interval(
      double theta0, const Eigen::VectorXd& nuisance, double tau) const override {
    check_tau(tau);
    if (nuisance.size() != 2) {
      throw UsageError(
          "gravity_regression_model: expected nuisance values (beta0, sigma)");
    }
    const double sd = nuisance[1];
    if (!(sd > 0.0)) {
      throw NumericError(
          "gravity_regression_model: plug-in sigma must be positive for the "
          "pragmatic band");
    }
    if (!(theta0 > 0.0)) {
      throw UsageError("gravity_regression_model: theta0 (g) must be positive");
    }
    // The mean shift between g values is linear in the slope difference, so
    // the band is exact in slope space and maps through g = 2 / b1^2.
    const double b1_0 = std::sqrt(2.0 / theta0);
    const double w = 2.0 * sd * norm_quantile(tau) / design_norm_;
    const double b1_lo = b1_0 - w;
    const double b1_hi = b1_0 + w;
    const double g_lo = 2.0 / (b1_hi * b1_hi);
    const double g_hi =
        b1_lo > 0.0 ? 2.0 / (b1_lo * b1_lo)
                    : std::numeric_limits<double>::infinity();
    return Interval::open(g_lo, g_hi);
  }

 private:
  double slope_for(const Eigen::VectorXd& theta) const {
    if (!(theta[0] > 0.0)) {
      throw NumericError(
          "gravity_regression_model: g must be positive in log_density/sample "
          "(got " +
          std::to_string(theta[0]) + ")");
    }
    return std::sqrt(2.0 / theta[0]);
  }

  double sd_for(const Eigen::VectorXd& theta) const {
    if (!(theta[2] > 0.0)) {
      throw NumericError(
          "gravity_regression_model: sigma must be positive (got " +
          std::to_string(theta[2]) + ")");
    }
    return theta[2];
  }

  std::vector<double> heights_;
  long future_reps_;
  std::vector<std::string> names_;
  std::vector<double> design_;  // sqrt(height), repeated future_reps_ times
  double design_norm_;
};

}  // namespace

std::shared_ptr<const Model> normal_mean_model(double sigma, long n_future) {
  return std::make_shared<NormalMeanModel>(sigma, n_future);
}

std::shared_ptr<const Model> two_sample_normal_model(double sigma,
                                                     long n_future_per_group) {
  return std::make_shared<TwoSampleNormalModel>(sigma, n_future_per_group);
}

std::shared_ptr<const Model> two_sample_diff_model(double sigma,
                                                   long n_future_per_group) {
  return std::make_shared<TwoSampleDiffModel>(sigma, n_future_per_group);
}

std::shared_ptr<const Model> gravity_regression_model(
    std::vector<double> heights, long future_reps) {
  return std::make_shared<GravityRegressionModel>(std::move(heights), future_reps);
}

}  // namespace tern
