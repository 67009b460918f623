#include "tern/calibration.hpp"

#include <atomic>
#include <cmath>

#include "tern/errors.hpp"
#include "tern/parallel.hpp"

namespace tern {

namespace {

double proportion_se(double p, long n) {
  return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

void validate_mc_args(long n_obs, long n_sims) {
  if (n_obs < 1) throw UsageError("calibration: n_obs must be at least 1");
  if (n_sims < 1) throw UsageError("calibration: n_sims must be at least 1");
}

}  // namespace

ErrorReport estimate_levels(const AgnosticTest& test, const Model& model,
                            const std::vector<Eigen::VectorXd>& theta_grid,
                            long n_obs, long n_sims, StreamKey key,
                            int threads) {
  validate_mc_args(n_obs, n_sims);
  if (theta_grid.empty()) {
    throw UsageError("calibration: theta_grid must not be empty");
  }
  const int hyp_dim = test.hypothesis.dim();

  ErrorReport report;
  report.n_sims = n_sims;
  report.per_point.reserve(theta_grid.size());
  for (std::size_t i = 0; i < theta_grid.size(); ++i) {
    const Eigen::VectorXd& theta = theta_grid[i];
    if (theta.size() != model.param_dim()) {
      throw UsageError("calibration: grid point dimension does not match the "
                       "model parameter dimension");
    }
    if (theta.size() < hyp_dim) {
      throw UsageError("calibration: grid point has fewer coordinates than "
                       "the hypothesis");
    }
    const StreamKey point_key = key.child(i);
    std::atomic<long> n_accept{0};
    std::atomic<long> n_agnostic{0};
    std::atomic<long> n_reject{0};
    parallel_for(static_cast<std::size_t>(n_sims), threads,
                 [&](std::size_t r) {
                   RngStream stream(point_key.child(r));
                   const Dataset data =
                       model.sample_dataset(theta, n_obs, stream);
                   switch (run_test(test, data)) {
                     case Decision::Accept:
                       n_accept.fetch_add(1, std::memory_order_relaxed);
                       break;
                     case Decision::Agnostic:
                       n_agnostic.fetch_add(1, std::memory_order_relaxed);
                       break;
                     case Decision::Reject:
                       n_reject.fetch_add(1, std::memory_order_relaxed);
                       break;
                   }
                 });

    PointCalibration point;
    point.theta = theta;
    point.in_h0 = test.hypothesis.contains(theta.head(hyp_dim));
    const double b = static_cast<double>(n_sims);
    point.p_accept = static_cast<double>(n_accept.load()) / b;
    point.p_agnostic = static_cast<double>(n_agnostic.load()) / b;
    point.p_reject = static_cast<double>(n_reject.load()) / b;
    point.se_accept = proportion_se(point.p_accept, n_sims);
    point.se_agnostic = proportion_se(point.p_agnostic, n_sims);
    point.se_reject = proportion_se(point.p_reject, n_sims);
    report.per_point.push_back(std::move(point));
  }

  for (const PointCalibration& point : report.per_point) {
    if (point.in_h0) {
      if (!report.alpha_hat || point.p_reject > *report.alpha_hat) {
        report.alpha_hat = point.p_reject;
        report.alpha_se = point.se_reject;
      }
    } else {
      if (!report.beta_hat || point.p_accept > *report.beta_hat) {
        report.beta_hat = point.p_accept;
        report.beta_se = point.se_accept;
      }
    }
  }
  return report;
}

double estimate_fcp(
    const AgnosticTest& test, const Model& model,
    const std::function<Eigen::VectorXd(RngStream&)>& prior_sampler,
    long n_obs, long n_sims, StreamKey key, int threads) {
  validate_mc_args(n_obs, n_sims);
  if (!prior_sampler) {
    throw UsageError("calibration: prior_sampler must be callable");
  }
  const int hyp_dim = test.hypothesis.dim();
  std::atomic<long> n_false{0};
  parallel_for(static_cast<std::size_t>(n_sims), threads, [&](std::size_t r) {
    RngStream stream(key.child(r));
    const Eigen::VectorXd theta = prior_sampler(stream);
    if (theta.size() != model.param_dim() || theta.size() < hyp_dim) {
      throw UsageError("calibration: prior_sampler returned a parameter of "
                       "the wrong dimension");
    }
    const Dataset data = model.sample_dataset(theta, n_obs, stream);
    const bool in_h0 = test.hypothesis.contains(theta.head(hyp_dim));
    const Decision d = run_test(test, data);
    const bool false_conclusion = (d == Decision::Reject && in_h0) ||
                                  (d == Decision::Accept && !in_h0);
    if (false_conclusion) n_false.fetch_add(1, std::memory_order_relaxed);
  });
  return static_cast<double>(n_false.load()) / static_cast<double>(n_sims);
}

}  // namespace tern
