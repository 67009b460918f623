#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "tern/core.hpp"
#include "tern/models.hpp"
#include "tern/pragmatic.hpp"

namespace tern {

enum class BandKind { Exact, MonteCarlo };

// Verdict for one candidate theta0 at one sample size.
struct SweepBandResult {
  double theta0 = 0.0;
  double pg_lo = 0.0;
  double pg_hi = 0.0;
  Decision decision = Decision::Agnostic;
  bool convex = true;
};

struct SweepRow {
  long n = 0;
  double est_lo = 0.0;
  double est_hi = 0.0;
  std::vector<SweepBandResult> bands;
};

struct SweepConfig {
  std::vector<long> n_list;
  std::vector<double> theta0_list;
  double level = 0.95;
  double tau = 0.95;
  BandKind band = BandKind::Exact;
  // Grid settings for the Monte-Carlo band; tau, seed and threads are taken
  // from the fields above.
  PragmaticConfig mc;
  std::uint64_t seed = 0;
  int threads = 1;
};

// For each sample size, simulates one dataset at true_theta, forms the
// region estimate, and tests it against the pragmatic band of every theta0.
// The same dataset serves all theta0 values at a given sample size, so the
// verdicts within a row are comparable.
std::vector<SweepRow> run_sweep(const Model& model,
                                const Eigen::VectorXd& true_theta,
                                const RegionEstimator& estimator,
                                const SweepConfig& config);

}  // namespace tern
