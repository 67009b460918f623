#include "tern/sweep.hpp"

#include "tern/errors.hpp"

namespace tern {

namespace {

// Offset separating dataset substreams from Monte-Carlo band substreams.
constexpr std::uint64_t kBandStreamBase = 1u << 20;

}  // namespace

std::vector<SweepRow> run_sweep(const Model& model,
                                const Eigen::VectorXd& true_theta,
                                const RegionEstimator& estimator,
                                const SweepConfig& cfg) {
  if (cfg.n_list.empty()) throw UsageError("sweep: n_list must not be empty");
  if (cfg.theta0_list.empty()) {
    throw UsageError("sweep: theta0_list must not be empty");
  }
  if (!(cfg.tau > 0.5 && cfg.tau < 1.0)) {
    throw UsageError("sweep: tau must lie strictly between 0.5 and 1");
  }
  if (true_theta.size() != model.param_dim()) {
    throw UsageError("sweep: true_theta dimension does not match the model");
  }

  const StreamKey master = StreamKey::from_seed(cfg.seed);
  const std::size_t n_theta0 = cfg.theta0_list.size();
  std::vector<SweepRow> rows;
  rows.reserve(cfg.n_list.size());

  for (std::size_t k = 0; k < cfg.n_list.size(); ++k) {
    const long n = cfg.n_list[k];
    if (n < 1) throw UsageError("sweep: sample sizes must be at least 1");
    RngStream data_stream(master.child(k));
    const Dataset data = model.sample_dataset(true_theta, n, data_stream);
    const ParameterRegion est_region = estimator(data);
    const Interval est_hull = est_region.hull1();
    const Eigen::VectorXd fitted = model.estimate(data);
    const Eigen::VectorXd nuisance = fitted.tail(fitted.size() - 1);

    SweepRow row;
    row.n = n;
    row.est_lo = est_hull.lo;
    row.est_hi = est_hull.hi;
    row.bands.reserve(n_theta0);

    for (std::size_t j = 0; j < n_theta0; ++j) {
      const double theta0 = cfg.theta0_list[j];
      SweepBandResult band;
      band.theta0 = theta0;
      ParameterRegion band_region = ParameterRegion::empty(1);
      if (cfg.band == BandKind::Exact) {
        const auto iv =
            model.exact_pragmatic_interval(theta0, nuisance, cfg.tau);
        if (!iv) {
          throw UsageError(
              "sweep: this model has no exact pragmatic band; rerun with the "
              "Monte-Carlo band");
        }
        band.pg_lo = iv->lo;
        band.pg_hi = iv->hi;
        band.convex = true;
        band_region = ParameterRegion::from_interval(*iv);
      } else {
        PragmaticConfig pc = cfg.mc;
        pc.tau = cfg.tau;
        pc.threads = cfg.threads;
        pc.seed = master.child(kBandStreamBase + k * n_theta0 + j).state;
        const PragmaticResult result =
            pragmatic_approx(model, theta0, pc, nuisance);
        band.pg_lo = result.hull.lo;
        band.pg_hi = result.hull.hi;
        band.convex = result.convex;
        band_region = result.retained;
      }
      band.decision = decide_from_region(est_region, band_region);
      row.bands.push_back(band);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace tern
