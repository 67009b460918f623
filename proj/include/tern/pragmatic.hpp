#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "tern/core.hpp"
#include "tern/dissimilarity.hpp"
#include "tern/models.hpp"

namespace tern {

// Search configuration for the approximate pragmatic hypothesis.
// tau is the single accuracy-threshold knob: a point theta* is retained iff
// its estimated dissimilarity to theta0 is strictly below tau.
struct PragmaticConfig {
  double tau = 0.95;            // in (0.5, 1)
  double grid_lo = 0.0;
  double grid_hi = 0.0;         // must exceed grid_lo
  long grid_points = 201;       // >= 3
  long n_sims = 10000;          // Monte-Carlo replicates per grid point
  std::uint64_t seed = 0;
  bool refine = false;          // bisection refinement of boundary cells
  bool common_random_numbers = false;  // share draws across grid points
  int threads = 1;
};

struct PragmaticGridPoint {
  double theta_star = 0.0;
  DissimilarityEstimate dissimilarity;
  bool retained = false;
};

struct PragmaticResult {
  // Exact union of the retained components (dim-1 region on coordinate 1).
  ParameterRegion retained;
  // Smallest single interval containing every retained point; equals the
  // union when convex is true.
  Interval hull;
  bool convex = true;
  std::vector<Interval> components;
  std::vector<PragmaticGridPoint> grid;
  Eigen::VectorXd plug_in;  // nuisance values used for coordinates 2..d
  // Estimated retained/excluded crossing locations, one per boundary cell
  // (cell midpoints unless refinement ran).
  std::vector<double> boundary_estimates;
};

// Closed-form pragmatic hypothesis for the normal mean model: the open
// interval of halfwidth 2 * sigma * Phi^-1(tau) / sqrt(n_future) around
// theta0.
ParameterRegion pragmatic_exact_normal(double theta0, double sigma,
                                       long n_future, double tau);

// Grid approximation of the pragmatic hypothesis for H0: coordinate1 =
// theta0. nuisance supplies coordinates 2..d (pass an empty vector for
// one-parameter models). The theta0 sample block is drawn once and shared by
// every grid point; each grid point draws its own fresh block from a
// counter-derived substream, so results do not depend on the thread count.
PragmaticResult pragmatic_approx(const Model& model, double theta0,
                                 const PragmaticConfig& config,
                                 const Eigen::VectorXd& nuisance);

inline PragmaticResult pragmatic_approx(const Model& model, double theta0,
                                        const PragmaticConfig& config) {
  return pragmatic_approx(model, theta0, config, Eigen::VectorXd());
}

// Computes the approximate pragmatic hypothesis (nuisance coordinates
// estimated from `data`), then runs the region-based test of that retained
// set using `estimator(data)`.
std::pair<PragmaticResult, Decision> pragmatic_test(
    const Model& model, double theta0, const Dataset& data,
    const RegionEstimator& estimator, const PragmaticConfig& config);

}  // namespace tern
