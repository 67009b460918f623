#pragma once

#include <Eigen/Dense>

#include "tern/models.hpp"
#include "tern/rng.hpp"

namespace tern {

// Estimated (or exact) classification dissimilarity between two parameter
// values: the equal-prior accuracy of the likelihood-ratio classifier that
// tells their future experiments apart. Strict-inequality convention: ties
// count as incorrect, so the value at equal parameters is exactly 0.
struct DissimilarityEstimate {
  double value = 0.0;
  double std_error = 0.0;
  long n_sims = 0;
  enum class Method { MonteCarlo, ClosedForm } method = Method::ClosedForm;
};

// log_density with a finiteness check: throws NumericError (naming the
// offending parameter) instead of silently comparing NaNs.
double checked_log_density(const Model& model, const FutureSample& z,
                           const Eigen::VectorXd& theta);

// Monte-Carlo estimate over n_sims replicates per parameter. Replicate i
// draws from counter-derived substreams of `key`, so any thread count gives
// bit-identical results.
DissimilarityEstimate classification_dissimilarity_mc(
    const Model& model, const Eigen::VectorXd& theta0,
    const Eigen::VectorXd& theta_star, long n_sims, StreamKey key,
    int threads = 1);

// Same estimator with explicit keys for the two sample blocks (first argument
// uses key_first). Swapping the parameters together with the keys reproduces
// the estimate exactly.
DissimilarityEstimate classification_dissimilarity_mc_keyed(
    const Model& model, const Eigen::VectorXd& theta0,
    const Eigen::VectorXd& theta_star, long n_sims, StreamKey key_first,
    StreamKey key_second, int threads = 1);

// Exact value for the normal mean model: Phi(sqrt(n_future) * |delta| /
// (2 sigma)) for delta != 0, and 0 at delta = 0.
DissimilarityEstimate classification_dissimilarity_closed_form_normal(
    double delta, double sigma, long n_future);

// Accuracy of the Bayes classifier predicting the group label (fair coin)
// from that group's future draw, for a two-group factorized model at
// theta_star = (theta1, theta2). Equals the classification dissimilarity
// between (theta1, theta1) and theta_star.
DissimilarityEstimate bayes_classifier_accuracy_two_pop(
    const Model& model, const Eigen::VectorXd& theta_star, long n_sims,
    StreamKey key, int threads = 1);

}  // namespace tern
