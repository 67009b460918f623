#include "tern/pragmatic.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <vector>

#include "tern/errors.hpp"
#include "tern/math/normal.hpp"
#include "tern/parallel.hpp"

namespace tern {

namespace {

constexpr long kCacheDoubleLimit = 4'000'000;

// Sample block for theta_bar0, drawn once and shared by every grid point.
// Small problems keep the draws (and their log densities at theta_bar0) in
// memory; larger ones replay the identical substreams on demand, so both
// paths produce the same counts.
struct Theta0Block {
  StreamKey key;
  long n_sims = 0;
  long future_len = 0;
  bool cached = false;
  std::vector<double> draws;       // n_sims * future_len when cached
  std::vector<double> log_at_ref;  // n_sims when cached
};

Theta0Block make_theta0_block(const Model& model,
                              const Eigen::VectorXd& theta_bar0, long n_sims,
                              StreamKey key) {
  Theta0Block block;
  block.key = key;
  block.n_sims = n_sims;
  block.future_len = static_cast<long>(model.future_len());
  block.cached = n_sims * block.future_len <= kCacheDoubleLimit;
  if (!block.cached) return block;
  block.draws.resize(static_cast<std::size_t>(n_sims * block.future_len));
  block.log_at_ref.resize(static_cast<std::size_t>(n_sims));
  FutureSample z;
  for (long i = 0; i < n_sims; ++i) {
    RngStream stream(key.child(static_cast<std::uint64_t>(i)));
    z = model.sample(theta_bar0, stream);
    std::memcpy(block.draws.data() + i * block.future_len, z.values.data(),
                static_cast<std::size_t>(block.future_len) * sizeof(double));
    block.log_at_ref[static_cast<std::size_t>(i)] =
        checked_log_density(model, z, theta_bar0);
  }
  return block;
}

// One dissimilarity estimate between theta_bar0 and (theta_star, nuisance),
// reusing the shared theta0 block and drawing the theta_star block from
// `star_key`.
DissimilarityEstimate eval_dissimilarity(const Model& model,
                                         const Eigen::VectorXd& theta_bar0,
                                         double theta_star,
                                         const Eigen::VectorXd& nuisance,
                                         const Theta0Block& block,
                                         StreamKey star_key) {
  Eigen::VectorXd theta_bar_star(model.param_dim());
  theta_bar_star[0] = theta_star;
  theta_bar_star.tail(nuisance.size()) = nuisance;

  long correct0 = 0;
  long correct1 = 0;
  FutureSample z0;
  z0.values.resize(static_cast<std::size_t>(block.future_len));
  for (long i = 0; i < block.n_sims; ++i) {
    double log_ref;
    if (block.cached) {
      std::memcpy(z0.values.data(), block.draws.data() + i * block.future_len,
                  static_cast<std::size_t>(block.future_len) * sizeof(double));
      log_ref = block.log_at_ref[static_cast<std::size_t>(i)];
    } else {
      RngStream stream(block.key.child(static_cast<std::uint64_t>(i)));
      z0 = model.sample(theta_bar0, stream);
      log_ref = checked_log_density(model, z0, theta_bar0);
    }
    if (log_ref > checked_log_density(model, z0, theta_bar_star)) ++correct0;

    RngStream stream(star_key.child(static_cast<std::uint64_t>(i)));
    const FutureSample z1 = model.sample(theta_bar_star, stream);
    if (checked_log_density(model, z1, theta_bar_star) >
        checked_log_density(model, z1, theta_bar0)) {
      ++correct1;
    }
  }

  const double b = static_cast<double>(block.n_sims);
  const double p0 = static_cast<double>(correct0) / b;
  const double p1 = static_cast<double>(correct1) / b;
  DissimilarityEstimate est;
  est.value = 0.5 * (p0 + p1);
  est.std_error =
      0.5 * std::sqrt(p0 * (1.0 - p0) / b + p1 * (1.0 - p1) / b);
  est.n_sims = block.n_sims;
  est.method = DissimilarityEstimate::Method::MonteCarlo;
  return est;
}

void validate_config(const PragmaticConfig& cfg, double theta0) {
  if (!(cfg.tau > 0.5 && cfg.tau < 1.0)) {
    throw UsageError("pragmatic: tau must lie strictly between 0.5 and 1");
  }
  if (!(cfg.grid_lo < cfg.grid_hi)) {
    throw UsageError("pragmatic: grid_lo must be below grid_hi");
  }
  if (cfg.grid_points < 3) {
    throw UsageError("pragmatic: grid_points must be at least 3");
  }
  if (cfg.n_sims < 1) {
    throw UsageError("pragmatic: n_sims must be at least 1");
  }
  if (!(cfg.grid_lo <= theta0 && theta0 <= cfg.grid_hi)) {
    throw UsageError("pragmatic: grid does not contain theta0");
  }
}

}  // namespace

ParameterRegion pragmatic_exact_normal(double theta0, double sigma,
                                       long n_future, double tau) {
  if (!(tau > 0.5 && tau < 1.0)) {
    throw UsageError("pragmatic: tau must lie strictly between 0.5 and 1");
  }
  if (!(sigma > 0.0)) {
    throw UsageError("pragmatic: sigma must be positive");
  }
  if (n_future < 1) {
    throw UsageError("pragmatic: n_future must be at least 1");
  }
  const double halfwidth = 2.0 * sigma * norm_quantile(tau) /
                           std::sqrt(static_cast<double>(n_future));
  return ParameterRegion::from_interval(
      Interval::open(theta0 - halfwidth, theta0 + halfwidth));
}

PragmaticResult pragmatic_approx(const Model& model, double theta0,
                                 const PragmaticConfig& cfg,
                                 const Eigen::VectorXd& nuisance) {
  validate_config(cfg, theta0);
  if (nuisance.size() != model.param_dim() - 1) {
    throw UsageError("pragmatic: nuisance must supply the other " +
                     std::to_string(model.param_dim() - 1) +
                     " model parameter(s)");
  }
  Eigen::VectorXd theta_bar0(model.param_dim());
  theta_bar0[0] = theta0;
  theta_bar0.tail(nuisance.size()) = nuisance;

  const StreamKey master = StreamKey::from_seed(cfg.seed);
  const Theta0Block block =
      make_theta0_block(model, theta_bar0, cfg.n_sims, master.child(0));

  const long g = cfg.grid_points;
  const double step = (cfg.grid_hi - cfg.grid_lo) / static_cast<double>(g - 1);
  auto node = [&](long j) { return cfg.grid_lo + step * static_cast<double>(j); };
  auto point_key = [&](long j) {
    return cfg.common_random_numbers
               ? master.child(1)
               : master.child(static_cast<std::uint64_t>(1 + j));
  };

  PragmaticResult result;
  result.plug_in = nuisance;
  result.grid.resize(static_cast<std::size_t>(g));
  parallel_for(static_cast<std::size_t>(g), cfg.threads, [&](std::size_t j) {
    PragmaticGridPoint& pt = result.grid[j];
    pt.theta_star = node(static_cast<long>(j));
    pt.dissimilarity = eval_dissimilarity(model, theta_bar0, pt.theta_star,
                                          nuisance, block,
                                          point_key(static_cast<long>(j)));
    pt.retained = pt.dissimilarity.value < cfg.tau;
  });

  // Boundary cells: one estimate per retained/excluded transition, either the
  // cell midpoint or a bisected crossing location.
  const double tol = (cfg.grid_hi - cfg.grid_lo) * 1e-4;
  std::uint64_t refine_counter = 0;
  auto refine_key = [&]() {
    return cfg.common_random_numbers
               ? master.child(1)
               : master.child(static_cast<std::uint64_t>(1 + g) +
                              refine_counter++);
  };
  auto retained_at = [&](double theta_star) {
    return eval_dissimilarity(model, theta_bar0, theta_star, nuisance, block,
                              refine_key())
               .value < cfg.tau;
  };
  std::vector<double> boundary(static_cast<std::size_t>(g), 0.0);
  for (long j = 0; j + 1 < g; ++j) {
    if (result.grid[static_cast<std::size_t>(j)].retained ==
        result.grid[static_cast<std::size_t>(j + 1)].retained) {
      continue;
    }
    double lo = node(j);
    double hi = node(j + 1);
    if (cfg.refine) {
      const bool lo_retained =
          result.grid[static_cast<std::size_t>(j)].retained;
      while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (retained_at(mid) == lo_retained) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
    }
    boundary[static_cast<std::size_t>(j)] = 0.5 * (lo + hi);
    result.boundary_estimates.push_back(boundary[static_cast<std::size_t>(j)]);
  }

  // Retained components: maximal runs of retained nodes, with edges moved to
  // the boundary estimates of the flanking transition cells.
  for (long j = 0; j < g;) {
    if (!result.grid[static_cast<std::size_t>(j)].retained) {
      ++j;
      continue;
    }
    long end = j;
    while (end + 1 < g && result.grid[static_cast<std::size_t>(end + 1)].retained) {
      ++end;
    }
    const double lo = j == 0 ? node(0) : boundary[static_cast<std::size_t>(j - 1)];
    const double hi = end == g - 1 ? node(g - 1) : boundary[static_cast<std::size_t>(end)];
    result.components.push_back(Interval::closed(lo, hi));
    j = end + 1;
  }
  if (std::none_of(result.components.begin(), result.components.end(),
                   [&](const Interval& c) { return c.contains(theta0); })) {
    result.components.push_back(Interval::point(theta0));
    std::sort(result.components.begin(), result.components.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  }

  result.convex = result.components.size() == 1;
  result.hull = Interval::closed(result.components.front().lo,
                                 result.components.back().hi);
  result.retained = ParameterRegion::from_intervals(result.components);
  return result;
}

std::pair<PragmaticResult, Decision> pragmatic_test(
    const Model& model, double theta0, const Dataset& data,
    const RegionEstimator& estimator, const PragmaticConfig& cfg) {
  const Eigen::VectorXd fitted = model.estimate(data);
  const Eigen::VectorXd nuisance = fitted.tail(fitted.size() - 1);
  PragmaticResult result = pragmatic_approx(model, theta0, cfg, nuisance);
  const Decision decision =
      decide_from_region(estimator(data), result.retained);
  return {std::move(result), decision};
}

}  // namespace tern
