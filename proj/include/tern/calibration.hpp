#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <vector>

#include "tern/core.hpp"
#include "tern/models.hpp"
#include "tern/rng.hpp"

namespace tern {

// Monte-Carlo outcome frequencies of a test at one true parameter value.
struct PointCalibration {
  Eigen::VectorXd theta;
  bool in_h0 = false;
  double p_accept = 0.0;
  double p_agnostic = 0.0;
  double p_reject = 0.0;
  double se_accept = 0.0;
  double se_agnostic = 0.0;
  double se_reject = 0.0;
};

// Estimated worst-case error levels over a parameter grid. alpha_hat is the
// largest rejection probability at a grid point inside the hypothesis,
// beta_hat the largest acceptance probability at a point outside it. A side
// with no grid points stays unset (the supremum is over an empty set, not 0).
struct ErrorReport {
  std::optional<double> alpha_hat;
  std::optional<double> alpha_se;
  std::optional<double> beta_hat;
  std::optional<double> beta_se;
  std::vector<PointCalibration> per_point;
  long n_sims = 0;
};

// Simulates n_sims datasets of size n_obs at every grid point and tabulates
// the three outcome frequencies. Replicate r of grid point i draws from
// key.child(i).child(r), so the report is identical for any thread count.
ErrorReport estimate_levels(const AgnosticTest& test, const Model& model,
                            const std::vector<Eigen::VectorXd>& theta_grid,
                            long n_obs, long n_sims, StreamKey key,
                            int threads = 1);

// False-conclusion probability under a prior: the frequency, over parameters
// drawn from `prior_sampler`, of rejecting a true hypothesis or accepting a
// false one. Agnostic outcomes are never false conclusions.
double estimate_fcp(
    const AgnosticTest& test, const Model& model,
    const std::function<Eigen::VectorXd(RngStream&)>& prior_sampler,
    long n_obs, long n_sims, StreamKey key, int threads = 1);

}  // namespace tern
