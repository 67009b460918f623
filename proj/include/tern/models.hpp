#pragma once

#include <Eigen/Dense>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tern/dataset.hpp"
#include "tern/region.hpp"
#include "tern/rng.hpp"

namespace tern {

// One draw of the future experiment. The layout of `values` is documented per
// model factory.
struct FutureSample {
  std::vector<double> values;
};

// A parametric family: log-density and sampler for the future experiment,
// plus observed-data sampling and point estimation. Coordinate 1 of the
// parameter vector is always the quantity hypotheses are written about.
class Model {
 public:
  virtual ~Model() = default;

  virtual int param_dim() const = 0;
  virtual const std::vector<std::string>& param_names() const = 0;
  virtual std::string future_design() const = 0;
  virtual std::size_t future_len() const = 0;

  virtual double log_density(const FutureSample& z,
                             const Eigen::VectorXd& theta) const = 0;
  virtual FutureSample sample(const Eigen::VectorXd& theta,
                              RngStream& rng) const = 0;

  // Point estimates for all coordinates from observed data.
  virtual Eigen::VectorXd estimate(const Dataset& data) const = 0;

  // Draws an observed dataset of size n_obs at theta (per-group size for the
  // two-sample models, row count for the regression model).
  virtual Dataset sample_dataset(const Eigen::VectorXd& theta, long n_obs,
                                 RngStream& rng) const = 0;

  // Closed-form set of coordinate-1 values whose classification dissimilarity
  // to theta0 stays below tau, for models that admit one. nuisance holds the
  // fixed values of coordinates 2..d.
  virtual std::optional<Interval> exact_pragmatic_interval(
      double theta0, const Eigen::VectorXd& nuisance, double tau) const;
};

// theta = (theta). Future experiment: n_future iid N(theta, sigma^2) draws.
std::shared_ptr<const Model> normal_mean_model(double sigma, long n_future);

// theta = (mu_a, mu_b). Future experiment: n_future_per_group draws from each
// group, group a first.
std::shared_ptr<const Model> two_sample_normal_model(double sigma,
                                                     long n_future_per_group);

// theta = (delta, mu_b) with delta = mu_a - mu_b, so mean-difference
// hypotheses sit on coordinate 1. Same future experiment layout as
// two_sample_normal_model.
std::shared_ptr<const Model> two_sample_diff_model(double sigma,
                                                   long n_future_per_group);

// theta = (g, beta0, sigma). Future experiment: the height design repeated
// future_reps times; values are the fall times in design order.
std::shared_ptr<const Model> gravity_regression_model(
    std::vector<double> heights, long future_reps = 1);

}  // namespace tern
