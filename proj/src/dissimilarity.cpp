#include "tern/dissimilarity.hpp"

#include <atomic>
#include <cmath>
#include <sstream>

#include "tern/errors.hpp"
#include "tern/math/normal.hpp"
#include "tern/parallel.hpp"

namespace tern {

namespace {

std::string theta_to_string(const Eigen::VectorXd& t) {
  std::ostringstream os;
  os << "(";
  for (Eigen::Index i = 0; i < t.size(); ++i) {
    if (i) os << ", ";
    os << t[i];
  }
  os << ")";
  return os.str();
}

double binomial_se_half(double p0, double p1, long n) {
  const double b = static_cast<double>(n);
  return 0.5 * std::sqrt(p0 * (1.0 - p0) / b + p1 * (1.0 - p1) / b);
}

}  // namespace

double checked_log_density(const Model& model, const FutureSample& z,
                           const Eigen::VectorXd& theta) {
  const double v = model.log_density(z, theta);
  if (!std::isfinite(v)) {
    throw NumericError("non-finite log density at theta = " +
                       theta_to_string(theta));
  }
  return v;
}

DissimilarityEstimate classification_dissimilarity_mc_keyed(
    const Model& model, const Eigen::VectorXd& theta0,
    const Eigen::VectorXd& theta_star, long n_sims, StreamKey key_first,
    StreamKey key_second, int threads) {
  if (n_sims < 1) {
    throw UsageError("classification_dissimilarity_mc: n_sims must be at least 1");
  }
  if (theta0.size() != model.param_dim() ||
      theta_star.size() != model.param_dim()) {
    throw UsageError(
        "classification_dissimilarity_mc: parameter dimension mismatch");
  }

  std::atomic<long> correct0{0};
  std::atomic<long> correct1{0};

  parallel_for(static_cast<std::size_t>(n_sims), threads, [&](std::size_t i) {
    RngStream s0(key_first.child(i));
    const FutureSample z0 = model.sample(theta0, s0);
    if (checked_log_density(model, z0, theta0) >
        checked_log_density(model, z0, theta_star)) {
      correct0.fetch_add(1, std::memory_order_relaxed);
    }
    RngStream s1(key_second.child(i));
    const FutureSample z1 = model.sample(theta_star, s1);
    if (checked_log_density(model, z1, theta_star) >
        checked_log_density(model, z1, theta0)) {
      correct1.fetch_add(1, std::memory_order_relaxed);
    }
  });

  const double p0 =
      static_cast<double>(correct0.load()) / static_cast<double>(n_sims);
  const double p1 =
      static_cast<double>(correct1.load()) / static_cast<double>(n_sims);

  DissimilarityEstimate est;
  est.value = 0.5 * (p0 + p1);
  est.std_error = binomial_se_half(p0, p1, n_sims);
  est.n_sims = n_sims;
  est.method = DissimilarityEstimate::Method::MonteCarlo;
  return est;
}

DissimilarityEstimate classification_dissimilarity_mc(
    const Model& model, const Eigen::VectorXd& theta0,
    const Eigen::VectorXd& theta_star, long n_sims, StreamKey key, int threads) {
  return classification_dissimilarity_mc_keyed(model, theta0, theta_star, n_sims,
                                               key.child(0), key.child(1),
                                               threads);
}

DissimilarityEstimate classification_dissimilarity_closed_form_normal(
    double delta, double sigma, long n_future) {
  if (!(sigma > 0.0)) {
    throw UsageError(
        "classification_dissimilarity_closed_form_normal: sigma must be positive");
  }
  if (n_future < 1) {
    throw UsageError(
        "classification_dissimilarity_closed_form_normal: n_future must be at "
        "least 1");
  }
  DissimilarityEstimate est;
  est.method = DissimilarityEstimate::Method::ClosedForm;
  est.std_error = 0.0;
  est.n_sims = 0;
  est.value = delta == 0.0
                  ? 0.0
                  : norm_cdf(std::sqrt(static_cast<double>(n_future)) *
                             std::abs(delta) / (2.0 * sigma));
  return est;
}

DissimilarityEstimate bayes_classifier_accuracy_two_pop(
    const Model& model, const Eigen::VectorXd& theta_star, long n_sims,
    StreamKey key, int threads) {
  const auto& names = model.param_names();
  const bool factorized = model.param_dim() == 2 && names.size() == 2 &&
                          names[0] == "mu_a" && names[1] == "mu_b";
  if (!factorized) {
    throw UsageError(
        "bayes_classifier_accuracy_two_pop: model is not a two-group "
        "factorized model (expected parameters mu_a, mu_b)");
  }
  if (theta_star.size() != 2) {
    throw UsageError("bayes_classifier_accuracy_two_pop: theta_star must have "
                     "dimension 2");
  }
  // The label-prediction accuracy reduces to the dissimilarity between the
  // equal-means vector and theta_star: the group-a block cancels from the
  // likelihood ratio.
  Eigen::VectorXd theta_bar(2);
  theta_bar[0] = theta_star[0];
  theta_bar[1] = theta_star[0];
  return classification_dissimilarity_mc(model, theta_bar, theta_star, n_sims,
                                         key, threads);
}

}  // namespace tern
