#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "tern/calibration.hpp"
#include "tern/core.hpp"
#include "tern/errors.hpp"
#include "tern/hypothesis.hpp"
#include "tern/io.hpp"
#include "tern/models.hpp"
#include "tern/pragmatic.hpp"
#include "tern/sweep.hpp"

namespace {

using nlohmann::json;
using namespace tern;

json interval_json(const Interval& iv) {
  json j;
  j["lo"] = std::isfinite(iv.lo) ? json(iv.lo) : json();
  j["hi"] = std::isfinite(iv.hi) ? json(iv.hi) : json();
  j["lo_open"] = iv.lo_open;
  j["hi_open"] = iv.hi_open;
  return j;
}

json region_components_json(const ParameterRegion& region) {
  json arr = json::array();
  for (const Interval& iv : region.components1()) {
    arr.push_back(interval_json(iv));
  }
  return arr;
}

json vector_json(const Eigen::VectorXd& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

void emit(const json& payload, const std::string& output_path) {
  std::string text = payload.dump(2);
  text.push_back('\n');
  if (output_path.empty()) {
    std::cout << text;
  } else {
    write_text_file(output_path, text);
  }
}

void emit_text(const std::string& text, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << text;
  } else {
    write_text_file(output_path, text);
  }
}

json finalize(json payload) {
  payload["meta"] = json{{"generated_at", iso8601_utc_now()}};
  return payload;
}

double sample_sd(const std::vector<double>& x) {
  if (x.size() < 2) {
    throw UsageError("need at least 2 observations to estimate sigma");
  }
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  const double var = ss / static_cast<double>(x.size() - 1);
  if (!(var > 0.0)) {
    throw NumericError("sample variance is zero; sigma cannot be estimated");
  }
  return std::sqrt(var);
}

double pooled_sd(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() < 2 || b.size() < 2) {
    throw UsageError("need at least 2 observations per group to pool sigma");
  }
  auto ss = [](const std::vector<double>& v) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double s = 0.0;
    for (double x : v) s += (x - mean) * (x - mean);
    return s;
  };
  const double df = static_cast<double>(a.size() + b.size() - 2);
  const double var = (ss(a) + ss(b)) / df;
  if (!(var > 0.0)) {
    throw NumericError("pooled variance is zero; sigma cannot be estimated");
  }
  return std::sqrt(var);
}

Dataset::Kind dataset_kind_for_model(const std::string& model) {
  if (model == "normal") return Dataset::Kind::Normal;
  if (model == "two_sample") return Dataset::Kind::TwoSample;
  return Dataset::Kind::Gravity;
}

const char* test_variable_for_model(const std::string& model) {
  if (model == "normal") return "theta";
  if (model == "two_sample") return "mu_a-mu_b";
  return "g";
}

void check_h0_variable(const ParsedHypothesis& h0, const std::string& model) {
  const std::string expected = test_variable_for_model(model);
  if (h0.variable != expected) {
    throw UsageError("--h0 tests variable \"" + h0.variable +
                     "\" but the " + model + " model tests \"" + expected +
                     "\"");
  }
}

// Shared flag bundles.

struct OutputOpts {
  std::string output;
};

void add_output_opts(CLI::App* cmd, OutputOpts& opts) {
  cmd->add_option("--output", opts.output,
                  "Write the report to this path instead of stdout");
}

struct TestOpts {
  std::string model = "normal";
  std::string h0_text;
  double alpha = 0.05;
  double level = 0.95;
  double x = 0.0;
  std::string data_path;
  bool simulate = false;
  long n_obs = 30;
  double true_theta = 0.0;
  double true_mu_a = 0.0;
  double true_mu_b = 0.0;
  double true_g = 9.8;
  double true_beta0 = 0.2;
  double sigma = 1.0;
  std::string estimator = "z";
  double prior_mean = 0.0;
  double prior_sd = 1.0;
  bool pragmatic = false;
  std::string band = "exact";
  double tau = 0.95;
  long n_future = 1;
  double grid_lo = 0.0;
  double grid_hi = 0.0;
  long grid_points = 201;
  long n_sims = 10000;
  bool refine = false;
  bool crn = false;
  std::vector<double> heights;
  long future_reps = 1;
  std::uint64_t seed = 0;
  int threads = 1;
  OutputOpts io;

  CLI::Option* alpha_opt = nullptr;
  CLI::Option* level_opt = nullptr;
  CLI::Option* x_opt = nullptr;
  CLI::Option* sigma_opt = nullptr;
  CLI::Option* estimator_opt = nullptr;
  CLI::Option* grid_lo_opt = nullptr;
  CLI::Option* grid_hi_opt = nullptr;
};

struct PragmaticOpts {
  std::string model = "normal";
  double theta0 = 0.0;
  double tau = 0.95;
  double grid_lo = 0.0;
  double grid_hi = 0.0;
  long grid_points = 201;
  long n_sims = 10000;
  bool refine = false;
  bool crn = false;
  double sigma = 1.0;
  long n_future = 1;
  std::vector<double> heights;
  long future_reps = 1;
  std::string data_path;
  std::vector<double> plug_in;
  std::string format = "json";
  std::uint64_t seed = 0;
  int threads = 1;
  OutputOpts io;

  CLI::Option* plug_in_opt = nullptr;
};

struct SweepOpts {
  std::string model = "normal";
  std::vector<long> n_list;
  std::vector<double> theta0_list;
  double alpha = 0.05;
  double level = 0.95;
  double tau = 0.95;
  std::string band = "exact";
  double true_theta = 0.0;
  double true_mu_a = 0.0;
  double true_mu_b = 0.0;
  double true_g = 9.8;
  double true_beta0 = 0.2;
  double sigma = 1.0;
  long n_future = 1;
  std::vector<double> heights;
  long future_reps = 1;
  double grid_lo = 0.0;
  double grid_hi = 0.0;
  long grid_points = 201;
  long n_sims = 10000;
  bool refine = false;
  bool crn = false;
  std::uint64_t seed = 0;
  int threads = 1;
  OutputOpts io;

  CLI::Option* alpha_opt = nullptr;
  CLI::Option* level_opt = nullptr;
  CLI::Option* grid_lo_opt = nullptr;
  CLI::Option* grid_hi_opt = nullptr;
};

struct CalibrateOpts {
  std::string model = "normal";
  std::string h0_text;
  double alpha = 0.05;
  double level = 0.95;
  std::string estimator = "z";
  double sigma = 1.0;
  double prior_mean = 0.0;
  double prior_sd = 1.0;
  std::vector<double> theta_grid;
  long n_sims = 0;
  long n_obs = 1;
  std::vector<double> fcp_prior;
  long fcp_sims = 100000;
  std::uint64_t seed = 0;
  int threads = 1;
  OutputOpts io;

  CLI::Option* alpha_opt = nullptr;
  CLI::Option* level_opt = nullptr;
  CLI::Option* fcp_prior_opt = nullptr;
};

double resolve_level(CLI::Option* alpha_opt, CLI::Option* level_opt,
                     double alpha, double level) {
  const double value = level_opt->count() > 0 ? level : 1.0 - alpha;
  (void)alpha_opt;
  if (!(value > 0.0 && value < 1.0)) {
    throw UsageError("--alpha/--level must place the level strictly between "
                     "0 and 1");
  }
  return value;
}

RegionEstimator build_normal_estimator(const std::string& name, double level,
                                       double sigma, double prior_mean,
                                       double prior_sd) {
  RegionEstimator est;
  est.level = level;
  if (name == "z") {
    est.kind = RegionEstimator::Kind::ZInterval;
    est.sigma = sigma;
  } else if (name == "t") {
    est.kind = RegionEstimator::Kind::TInterval;
  } else if (name == "credible" || name == "hpd") {
    est.kind = name == "credible" ? RegionEstimator::Kind::NormalPosteriorCredible
                                  : RegionEstimator::Kind::NormalPosteriorHPD;
    est.prior_mean = prior_mean;
    est.prior_sd = prior_sd;
    est.obs_sd = sigma;
  } else {
    throw UsageError("--estimator must be one of z, t, credible, hpd");
  }
  return est;
}

json estimator_json(const RegionEstimator& est) {
  json j;
  j["kind"] = est.kind_name();
  j["level"] = est.level;
  switch (est.kind) {
    case RegionEstimator::Kind::ZInterval:
      j["sigma"] = est.sigma;
      break;
    case RegionEstimator::Kind::NormalPosteriorCredible:
    case RegionEstimator::Kind::NormalPosteriorHPD:
      j["prior_mean"] = est.prior_mean;
      j["prior_sd"] = est.prior_sd;
      j["sigma"] = est.obs_sd;
      break;
    default:
      break;
  }
  return j;
}

json h0_json(const ParsedHypothesis& h0) {
  json j;
  j["text"] = h0.canonical;
  j["variable"] = h0.variable;
  j["point"] = h0.is_point;
  return j;
}

std::vector<double> default_gravity_heights(const Dataset& data) {
  std::vector<double> heights = data.height;
  std::sort(heights.begin(), heights.end());
  heights.erase(std::unique(heights.begin(), heights.end()), heights.end());
  return heights;
}

int cmd_test(const TestOpts& opt) {
  const double level =
      resolve_level(opt.alpha_opt, opt.level_opt, opt.alpha, opt.level);
  const ParsedHypothesis h0 = parse_hypothesis(opt.h0_text);
  check_h0_variable(h0, opt.model);

  // Observed data: explicit value, CSV file, or built-in generator.
  Dataset data;
  if (!opt.data_path.empty()) {
    data = read_dataset_csv(opt.data_path, dataset_kind_for_model(opt.model));
  } else if (opt.x_opt->count() > 0) {
    if (opt.model != "normal") {
      throw UsageError("--x is only meaningful for the normal model; use "
                       "--data or --simulate");
    }
    data = Dataset::normal({opt.x});
  } else if (opt.simulate) {
    if (opt.n_obs < 1) throw UsageError("--n-obs must be at least 1");
    RngStream stream(StreamKey::from_seed(opt.seed).child(0));
    if (opt.model == "normal") {
      const auto gen = normal_mean_model(opt.sigma, 1);
      data = gen->sample_dataset(Eigen::VectorXd::Constant(1, opt.true_theta),
                                 opt.n_obs, stream);
    } else if (opt.model == "two_sample") {
      const auto gen = two_sample_diff_model(opt.sigma, 1);
      Eigen::VectorXd theta(2);
      theta << opt.true_mu_a - opt.true_mu_b, opt.true_mu_b;
      data = gen->sample_dataset(theta, opt.n_obs, stream);
    } else {
      if (opt.heights.empty()) {
        throw UsageError("--simulate with the gravity model needs --heights");
      }
      const auto gen = gravity_regression_model(opt.heights, 1);
      Eigen::VectorXd theta(3);
      theta << opt.true_g, opt.true_beta0, opt.sigma;
      data = gen->sample_dataset(theta, opt.n_obs, stream);
    }
  } else {
    throw UsageError("provide observed data via --x, --data, or --simulate");
  }

  RegionEstimator estimator;
  if (opt.model == "normal") {
    estimator = build_normal_estimator(opt.estimator, level, opt.sigma,
                                       opt.prior_mean, opt.prior_sd);
  } else {
    if (opt.estimator_opt->count() > 0) {
      throw UsageError("--estimator is fixed for the " + opt.model +
                       " model (pooled t for two_sample, regression g "
                       "interval for gravity)");
    }
    estimator.level = level;
    estimator.kind = opt.model == "two_sample"
                         ? RegionEstimator::Kind::TwoSampleTInterval
                         : RegionEstimator::Kind::RegressionCoefficientInterval;
  }

  const ParameterRegion est_region = estimator(data);

  json payload;
  payload["command"] = "test";
  payload["model"] = opt.model;
  payload["h0"] = h0_json(h0);
  payload["estimator"] = estimator_json(estimator);
  payload["n"] = data.size();
  if (data.kind == Dataset::Kind::TwoSample) {
    payload["n_a"] = data.a.size();
    payload["n_b"] = data.b.size();
  }
  payload["region"] = interval_json(est_region.hull1());
  payload["seed"] = opt.seed;

  if (!opt.pragmatic) {
    const Decision decision = decide_from_region(est_region, h0.region);
    payload["decision"] = to_cstring(decision);
    emit(finalize(payload), opt.io.output);
    return 0;
  }

  if (!h0.is_point) {
    throw UsageError("--pragmatic needs a point hypothesis (VAR = value)");
  }
  const double theta0 = h0.point_value;

  std::shared_ptr<const Model> model;
  std::string sigma_source;
  double sigma_used = opt.sigma;
  if (opt.model == "normal") {
    if (estimator.kind == RegionEstimator::Kind::TInterval) {
      sigma_used = sample_sd(data.x);
      sigma_source = "sample";
    } else {
      sigma_source = "given";
    }
    model = normal_mean_model(sigma_used, opt.n_future);
  } else if (opt.model == "two_sample") {
    if (opt.sigma_opt->count() > 0) {
      sigma_source = "given";
    } else {
      sigma_used = pooled_sd(data.a, data.b);
      sigma_source = "pooled";
    }
    model = two_sample_diff_model(sigma_used, opt.n_future);
  } else {
    std::vector<double> heights =
        opt.heights.empty() ? default_gravity_heights(data) : opt.heights;
    model = gravity_regression_model(heights, opt.future_reps);
    sigma_source = "fit";
  }

  json prag;
  prag["band"] = opt.band;
  prag["tau"] = opt.tau;
  prag["theta0"] = theta0;
  prag["sigma_source"] = sigma_source;
  if (sigma_source == "given" || sigma_source == "sample" ||
      sigma_source == "pooled") {
    prag["sigma"] = sigma_used;
    prag["n_future"] = opt.n_future;
  }

  Decision decision = Decision::Agnostic;
  if (opt.band == "exact") {
    const Eigen::VectorXd fitted = model->estimate(data);
    const Eigen::VectorXd nuisance = fitted.tail(fitted.size() - 1);
    const auto iv = model->exact_pragmatic_interval(theta0, nuisance, opt.tau);
    if (!iv) {
      throw UsageError("this model has no exact pragmatic band; rerun with "
                       "--band mc");
    }
    const ParameterRegion band_region = ParameterRegion::from_interval(*iv);
    decision = decide_from_region(est_region, band_region);
    prag["interval"] = interval_json(*iv);
    prag["convex"] = true;
    prag["components"] = region_components_json(band_region);
  } else if (opt.band == "mc") {
    if (opt.grid_lo_opt->count() == 0 || opt.grid_hi_opt->count() == 0) {
      throw UsageError("the Monte-Carlo band needs --grid-lo and --grid-hi");
    }
    PragmaticConfig pc;
    pc.tau = opt.tau;
    pc.grid_lo = opt.grid_lo;
    pc.grid_hi = opt.grid_hi;
    pc.grid_points = opt.grid_points;
    pc.n_sims = opt.n_sims;
    pc.seed = opt.seed;
    pc.refine = opt.refine;
    pc.common_random_numbers = opt.crn;
    pc.threads = opt.threads;
    auto [result, dec] = pragmatic_test(*model, theta0, data, estimator, pc);
    decision = dec;
    prag["interval"] = interval_json(result.hull);
    prag["convex"] = result.convex;
    prag["components"] = region_components_json(result.retained);
    prag["n_sims"] = pc.n_sims;
    prag["grid"] = json{{"lo", pc.grid_lo},
                        {"hi", pc.grid_hi},
                        {"points", pc.grid_points}};
    prag["plug_in"] = vector_json(result.plug_in);
  } else {
    throw UsageError("--band must be exact or mc");
  }

  payload["pragmatic"] = prag;
  payload["decision"] = to_cstring(decision);
  emit(finalize(payload), opt.io.output);
  return 0;
}

std::shared_ptr<const Model> build_pragmatic_model(
    const std::string& model_name, double sigma, long n_future,
    const std::vector<double>& heights, long future_reps) {
  if (model_name == "normal") return normal_mean_model(sigma, n_future);
  if (model_name == "two_sample") {
    return two_sample_diff_model(sigma, n_future);
  }
  if (heights.empty()) {
    throw UsageError("the gravity model needs --heights");
  }
  return gravity_regression_model(heights, future_reps);
}

int cmd_pragmatic(const PragmaticOpts& opt) {
  const auto model = build_pragmatic_model(opt.model, opt.sigma, opt.n_future,
                                           opt.heights, opt.future_reps);

  Eigen::VectorXd nuisance;
  if (!opt.data_path.empty()) {
    const Dataset data =
        read_dataset_csv(opt.data_path, dataset_kind_for_model(opt.model));
    const Eigen::VectorXd fitted = model->estimate(data);
    nuisance = fitted.tail(fitted.size() - 1);
  } else if (opt.plug_in_opt->count() > 0) {
    nuisance.resize(static_cast<Eigen::Index>(opt.plug_in.size()));
    for (std::size_t i = 0; i < opt.plug_in.size(); ++i) {
      nuisance[static_cast<Eigen::Index>(i)] = opt.plug_in[i];
    }
  } else if (model->param_dim() > 1) {
    throw UsageError("the " + opt.model + " model has nuisance parameters; "
                     "supply them via --plug-in or estimate them via --data");
  }

  PragmaticConfig pc;
  pc.tau = opt.tau;
  pc.grid_lo = opt.grid_lo;
  pc.grid_hi = opt.grid_hi;
  pc.grid_points = opt.grid_points;
  pc.n_sims = opt.n_sims;
  pc.seed = opt.seed;
  pc.refine = opt.refine;
  pc.common_random_numbers = opt.crn;
  pc.threads = opt.threads;

  const PragmaticResult result =
      pragmatic_approx(*model, opt.theta0, pc, nuisance);

  if (opt.format == "csv") {
    std::string text = "theta_star,dissimilarity,std_error,retained\n";
    for (const PragmaticGridPoint& pt : result.grid) {
      text += format_double(pt.theta_star);
      text += ',';
      text += format_double(pt.dissimilarity.value);
      text += ',';
      text += format_double(pt.dissimilarity.std_error);
      text += ',';
      text += pt.retained ? '1' : '0';
      text += '\n';
    }
    emit_text(text, opt.io.output);
    return 0;
  }
  if (opt.format != "json") {
    throw UsageError("--format must be json or csv");
  }

  json payload;
  payload["command"] = "pragmatic";
  payload["model"] = opt.model;
  payload["theta0"] = opt.theta0;
  payload["tau"] = pc.tau;
  payload["n_sims"] = pc.n_sims;
  payload["seed"] = opt.seed;
  payload["grid"] = json{{"lo", pc.grid_lo},
                         {"hi", pc.grid_hi},
                         {"points", pc.grid_points}};
  payload["refine"] = pc.refine;
  payload["plug_in"] = vector_json(result.plug_in);
  payload["hull"] = interval_json(result.hull);
  payload["convex"] = result.convex;
  payload["components"] = region_components_json(result.retained);
  json boundaries = json::array();
  for (double b : result.boundary_estimates) boundaries.push_back(b);
  payload["boundary_estimates"] = boundaries;
  json grid_points = json::array();
  for (const PragmaticGridPoint& pt : result.grid) {
    grid_points.push_back(json{{"theta_star", pt.theta_star},
                               {"dissimilarity", pt.dissimilarity.value},
                               {"std_error", pt.dissimilarity.std_error},
                               {"retained", pt.retained}});
  }
  payload["grid_points"] = grid_points;
  emit(finalize(payload), opt.io.output);
  return 0;
}

int cmd_sweep(const SweepOpts& opt) {
  const double level =
      resolve_level(opt.alpha_opt, opt.level_opt, opt.alpha, opt.level);

  std::shared_ptr<const Model> model;
  Eigen::VectorXd true_theta;
  RegionEstimator estimator;
  estimator.level = level;
  if (opt.model == "normal") {
    model = normal_mean_model(opt.sigma, opt.n_future);
    true_theta = Eigen::VectorXd::Constant(1, opt.true_theta);
    estimator.kind = RegionEstimator::Kind::ZInterval;
    estimator.sigma = opt.sigma;
  } else if (opt.model == "two_sample") {
    model = two_sample_diff_model(opt.sigma, opt.n_future);
    true_theta.resize(2);
    true_theta << opt.true_mu_a - opt.true_mu_b, opt.true_mu_b;
    estimator.kind = RegionEstimator::Kind::TwoSampleTInterval;
  } else if (opt.model == "gravity") {
    if (opt.heights.empty()) {
      throw UsageError("the gravity model needs --heights");
    }
    model = gravity_regression_model(opt.heights, opt.future_reps);
    true_theta.resize(3);
    true_theta << opt.true_g, opt.true_beta0, opt.sigma;
    estimator.kind = RegionEstimator::Kind::RegressionCoefficientInterval;
  } else {
    throw UsageError("--model must be normal, two_sample, or gravity");
  }

  SweepConfig cfg;
  cfg.n_list = opt.n_list;
  cfg.theta0_list = opt.theta0_list;
  cfg.level = level;
  cfg.tau = opt.tau;
  if (opt.band == "exact") {
    cfg.band = BandKind::Exact;
  } else if (opt.band == "mc") {
    cfg.band = BandKind::MonteCarlo;
    if (opt.grid_lo_opt->count() == 0 || opt.grid_hi_opt->count() == 0) {
      throw UsageError("the Monte-Carlo band needs --grid-lo and --grid-hi");
    }
  } else {
    throw UsageError("--band must be exact or mc");
  }
  cfg.mc.grid_lo = opt.grid_lo;
  cfg.mc.grid_hi = opt.grid_hi;
  cfg.mc.grid_points = opt.grid_points;
  cfg.mc.n_sims = opt.n_sims;
  cfg.mc.refine = opt.refine;
  cfg.mc.common_random_numbers = opt.crn;
  cfg.seed = opt.seed;
  cfg.threads = opt.threads;

  const std::vector<SweepRow> rows =
      run_sweep(*model, true_theta, estimator, cfg);

  json payload;
  payload["command"] = "sweep";
  payload["model"] = opt.model;
  payload["band"] = opt.band;
  payload["tau"] = cfg.tau;
  payload["level"] = cfg.level;
  payload["seed"] = opt.seed;
  payload["true_theta"] = vector_json(true_theta);
  json rows_json = json::array();
  for (const SweepRow& row : rows) {
    json bands = json::array();
    for (const SweepBandResult& band : row.bands) {
      bands.push_back(json{{"theta0", band.theta0},
                           {"pg_lo", band.pg_lo},
                           {"pg_hi", band.pg_hi},
                           {"convex", band.convex},
                           {"decision", to_cstring(band.decision)}});
    }
    rows_json.push_back(json{{"n", row.n},
                             {"est_lo", row.est_lo},
                             {"est_hi", row.est_hi},
                             {"bands", bands}});
  }
  payload["rows"] = rows_json;
  emit(finalize(payload), opt.io.output);
  return 0;
}

int cmd_calibrate(const CalibrateOpts& opt) {
  if (opt.model != "normal") {
    throw UsageError("calibrate currently supports only --model normal");
  }
  const double level =
      resolve_level(opt.alpha_opt, opt.level_opt, opt.alpha, opt.level);
  if (opt.n_sims < 1) {
    throw UsageError("--n-sims must be at least 1");
  }
  if (opt.n_obs < 1) {
    throw UsageError("--n-obs must be at least 1");
  }
  if (opt.theta_grid.empty()) {
    throw UsageError("--theta-grid must list at least one value");
  }
  const ParsedHypothesis h0 = parse_hypothesis(opt.h0_text);
  check_h0_variable(h0, opt.model);
  const RegionEstimator estimator = build_normal_estimator(
      opt.estimator, level, opt.sigma, opt.prior_mean, opt.prior_sd);
  if (estimator.kind == RegionEstimator::Kind::TInterval && opt.n_obs < 2) {
    throw UsageError("the t estimator needs --n-obs of at least 2");
  }

  const auto model = normal_mean_model(opt.sigma, 1);
  const AgnosticTest test{h0.region, estimator};
  std::vector<Eigen::VectorXd> grid;
  grid.reserve(opt.theta_grid.size());
  for (double t : opt.theta_grid) {
    grid.push_back(Eigen::VectorXd::Constant(1, t));
  }

  const StreamKey master = StreamKey::from_seed(opt.seed);
  const ErrorReport report = estimate_levels(test, *model, grid, opt.n_obs,
                                             opt.n_sims, master.child(0),
                                             opt.threads);

  json payload;
  payload["command"] = "calibrate";
  payload["model"] = opt.model;
  payload["h0"] = h0_json(h0);
  payload["estimator"] = estimator_json(estimator);
  payload["n_obs"] = opt.n_obs;
  payload["n_sims"] = opt.n_sims;
  payload["seed"] = opt.seed;
  payload["alpha_hat"] = report.alpha_hat ? json(*report.alpha_hat) : json();
  payload["alpha_se"] = report.alpha_se ? json(*report.alpha_se) : json();
  payload["beta_hat"] = report.beta_hat ? json(*report.beta_hat) : json();
  payload["beta_se"] = report.beta_se ? json(*report.beta_se) : json();
  json points = json::array();
  for (const PointCalibration& pt : report.per_point) {
    points.push_back(json{{"theta", vector_json(pt.theta)},
                          {"in_h0", pt.in_h0},
                          {"accept_rate", pt.p_accept},
                          {"type3_rate", pt.p_agnostic},
                          {"reject_rate", pt.p_reject},
                          {"se_accept", pt.se_accept},
                          {"se_type3", pt.se_agnostic},
                          {"se_reject", pt.se_reject}});
  }
  payload["per_point"] = points;

  if (opt.fcp_prior_opt->count() > 0) {
    if (opt.fcp_prior.size() != 2 || !(opt.fcp_prior[1] > 0.0)) {
      throw UsageError("--fcp-prior takes MEAN,SD with SD > 0");
    }
    if (opt.fcp_sims < 1) {
      throw UsageError("--fcp-sims must be at least 1");
    }
    const double m = opt.fcp_prior[0];
    const double sd = opt.fcp_prior[1];
    const auto sampler = [m, sd](RngStream& stream) {
      return Eigen::VectorXd::Constant(1, stream.normal(m, sd)).eval();
    };
    const double gamma = estimate_fcp(test, *model, sampler, opt.n_obs,
                                      opt.fcp_sims, master.child(1),
                                      opt.threads);
    const double se =
        std::sqrt(gamma * (1.0 - gamma) / static_cast<double>(opt.fcp_sims));
    payload["fcp"] = json{{"prior_mean", m},
                          {"prior_sd", sd},
                          {"n_sims", opt.fcp_sims},
                          {"gamma_hat", gamma},
                          {"se", se}};
  }
  emit(finalize(payload), opt.io.output);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Three-valued hypothesis tests built from region estimators"};
  app.set_version_flag("--version", "tern 0.1.0");
  app.set_config("--config", "",
                 "Read options from a key=value file (command-line flags win)");
  app.require_subcommand(1);

  TestOpts test_opts;
  PragmaticOpts prag_opts;
  SweepOpts sweep_opts;
  CalibrateOpts cal_opts;

  // test
  {
    CLI::App* cmd = app.add_subcommand(
        "test", "Run a three-valued test of --h0 on observed data");
    cmd->add_option("--model", test_opts.model, "normal, two_sample, gravity")
        ->check(CLI::IsMember({"normal", "two_sample", "gravity"}));
    cmd->add_option("--h0", test_opts.h0_text, "Hypothesis, e.g. \"theta>=0\"")
        ->required();
    test_opts.alpha_opt =
        cmd->add_option("--alpha", test_opts.alpha,
                        "Error-level knob; the estimator level is 1-alpha");
    test_opts.level_opt = cmd->add_option(
        "--level", test_opts.level, "Confidence/credibility level directly");
    test_opts.alpha_opt->excludes(test_opts.level_opt);
    test_opts.x_opt = cmd->add_option(
        "--x", test_opts.x, "Single observation (normal model only)");
    cmd->add_option("--data", test_opts.data_path, "Input CSV path");
    cmd->add_flag("--simulate", test_opts.simulate,
                  "Generate the dataset from the built-in sampler");
    cmd->add_option("--n-obs", test_opts.n_obs,
                    "Sample size for --simulate (per group for two_sample)");
    cmd->add_option("--true-theta", test_opts.true_theta,
                    "Generator mean (normal model --simulate)");
    cmd->add_option("--true-mu-a", test_opts.true_mu_a,
                    "Generator mean of group a (--simulate)");
    cmd->add_option("--true-mu-b", test_opts.true_mu_b,
                    "Generator mean of group b (--simulate)");
    cmd->add_option("--true-g", test_opts.true_g,
                    "Generator gravity value (--simulate)");
    cmd->add_option("--true-beta0", test_opts.true_beta0,
                    "Generator reaction-time intercept (--simulate)");
    test_opts.x_opt->excludes("--data");
    test_opts.x_opt->excludes("--simulate");
    cmd->get_option("--data")->excludes("--simulate");
    test_opts.sigma_opt = cmd->add_option(
        "--sigma", test_opts.sigma,
        "Known observation sd (z/credible estimators, generators, bands)");
    test_opts.estimator_opt =
        cmd->add_option("--estimator", test_opts.estimator,
                        "z, t, credible, hpd (normal model only)")
            ->check(CLI::IsMember({"z", "t", "credible", "hpd"}));
    cmd->add_option("--prior-mean", test_opts.prior_mean,
                    "Prior mean for credible/hpd");
    cmd->add_option("--prior-sd", test_opts.prior_sd,
                    "Prior sd for credible/hpd");
    cmd->add_flag("--pragmatic", test_opts.pragmatic,
                  "Test the pragmatic enlargement of a point --h0");
    cmd->add_option("--band", test_opts.band,
                    "Pragmatic band construction: exact or mc")
        ->check(CLI::IsMember({"mc", "exact"}));
    cmd->add_option("--tau", test_opts.tau,
                    "Dissimilarity threshold in (0.5, 1)");
    cmd->add_option("--n-future", test_opts.n_future,
                    "Future-experiment size per draw");
    test_opts.grid_lo_opt =
        cmd->add_option("--grid-lo", test_opts.grid_lo, "Search grid lower end");
    test_opts.grid_hi_opt =
        cmd->add_option("--grid-hi", test_opts.grid_hi, "Search grid upper end");
    cmd->add_option("--grid-points", test_opts.grid_points, "Grid node count");
    cmd->add_option("--n-sims", test_opts.n_sims,
                    "Monte-Carlo replicates per grid point");
    cmd->add_flag("--refine", test_opts.refine,
                  "Bisection refinement of band boundaries");
    cmd->add_flag("--crn", test_opts.crn,
                  "Common random numbers across grid points");
    cmd->add_option("--heights", test_opts.heights,
                    "Drop heights (gravity model)")
        ->delimiter(',');
    cmd->add_option("--future-reps", test_opts.future_reps,
                    "Repetitions of the height design in the future experiment");
    cmd->add_option("--seed", test_opts.seed, "Random seed");
    cmd->add_option("--threads", test_opts.threads, "Worker threads");
    add_output_opts(cmd, test_opts.io);
  }

  // pragmatic
  {
    CLI::App* cmd = app.add_subcommand(
        "pragmatic", "Compute the pragmatic hypothesis around --theta0");
    cmd->add_option("--model", prag_opts.model, "normal, two_sample, gravity")
        ->check(CLI::IsMember({"normal", "two_sample", "gravity"}));
    cmd->add_option("--theta0", prag_opts.theta0, "Hypothesis coordinate value")
        ->required();
    cmd->add_option("--tau", prag_opts.tau, "Dissimilarity threshold in (0.5, 1)");
    cmd->add_option("--grid-lo", prag_opts.grid_lo, "Search grid lower end")
        ->required();
    cmd->add_option("--grid-hi", prag_opts.grid_hi, "Search grid upper end")
        ->required();
    cmd->add_option("--grid-points", prag_opts.grid_points, "Grid node count");
    cmd->add_option("--n-sims", prag_opts.n_sims,
                    "Monte-Carlo replicates per grid point");
    cmd->add_flag("--refine", prag_opts.refine,
                  "Bisection refinement of band boundaries");
    cmd->add_flag("--crn", prag_opts.crn,
                  "Common random numbers across grid points");
    cmd->add_option("--sigma", prag_opts.sigma, "Known observation sd");
    cmd->add_option("--n-future", prag_opts.n_future,
                    "Future-experiment size per draw");
    cmd->add_option("--heights", prag_opts.heights,
                    "Drop heights (gravity model)")
        ->delimiter(',');
    cmd->add_option("--future-reps", prag_opts.future_reps,
                    "Repetitions of the height design in the future experiment");
    cmd->add_option("--data", prag_opts.data_path,
                    "CSV used to estimate nuisance coordinates");
    prag_opts.plug_in_opt =
        cmd->add_option("--plug-in", prag_opts.plug_in,
                        "Nuisance coordinate values (comma separated)")
            ->delimiter(',');
    prag_opts.plug_in_opt->excludes("--data");
    cmd->add_option("--format", prag_opts.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--seed", prag_opts.seed, "Random seed");
    cmd->add_option("--threads", prag_opts.threads, "Worker threads");
    add_output_opts(cmd, prag_opts.io);
  }

  // sweep
  {
    CLI::App* cmd = app.add_subcommand(
        "sweep",
        "Simulate datasets over sample sizes and test pragmatic bands");
    cmd->add_option("--model", sweep_opts.model, "normal, two_sample, gravity")
        ->check(CLI::IsMember({"normal", "two_sample", "gravity"}));
    cmd->add_option("--n-list", sweep_opts.n_list,
                    "Sample sizes (comma separated)")
        ->required()
        ->delimiter(',');
    cmd->add_option("--theta0-list", sweep_opts.theta0_list,
                    "Candidate theta0 values (comma separated)")
        ->required()
        ->delimiter(',');
    sweep_opts.alpha_opt =
        cmd->add_option("--alpha", sweep_opts.alpha,
                        "Error-level knob; the estimator level is 1-alpha");
    sweep_opts.level_opt = cmd->add_option(
        "--level", sweep_opts.level, "Confidence level directly");
    sweep_opts.alpha_opt->excludes(sweep_opts.level_opt);
    cmd->add_option("--tau", sweep_opts.tau,
                    "Dissimilarity threshold in (0.5, 1)");
    cmd->add_option("--band", sweep_opts.band,
                    "Pragmatic band construction: exact or mc")
        ->check(CLI::IsMember({"exact", "mc"}));
    cmd->add_option("--true-theta", sweep_opts.true_theta,
                    "Generator mean (normal model)");
    cmd->add_option("--true-mu-a", sweep_opts.true_mu_a,
                    "Generator mean of group a");
    cmd->add_option("--true-mu-b", sweep_opts.true_mu_b,
                    "Generator mean of group b");
    cmd->add_option("--true-g", sweep_opts.true_g, "Generator gravity value");
    cmd->add_option("--true-beta0", sweep_opts.true_beta0,
                    "Generator reaction-time intercept");
    cmd->add_option("--sigma", sweep_opts.sigma, "Generator observation sd");
    cmd->add_option("--n-future", sweep_opts.n_future,
                    "Future-experiment size per draw");
    cmd->add_option("--heights", sweep_opts.heights,
                    "Drop heights (gravity model)")
        ->delimiter(',');
    cmd->add_option("--future-reps", sweep_opts.future_reps,
                    "Repetitions of the height design in the future experiment");
    sweep_opts.grid_lo_opt = cmd->add_option(
        "--grid-lo", sweep_opts.grid_lo, "Search grid lower end (mc band)");
    sweep_opts.grid_hi_opt = cmd->add_option(
        "--grid-hi", sweep_opts.grid_hi, "Search grid upper end (mc band)");
    cmd->add_option("--grid-points", sweep_opts.grid_points,
                    "Grid node count (mc band)");
    cmd->add_option("--n-sims", sweep_opts.n_sims,
                    "Monte-Carlo replicates per grid point (mc band)");
    cmd->add_flag("--refine", sweep_opts.refine,
                  "Bisection refinement of band boundaries (mc band)");
    cmd->add_flag("--crn", sweep_opts.crn,
                  "Common random numbers across grid points (mc band)");
    cmd->add_option("--seed", sweep_opts.seed, "Random seed");
    cmd->add_option("--threads", sweep_opts.threads, "Worker threads");
    add_output_opts(cmd, sweep_opts.io);
  }

  // calibrate
  {
    CLI::App* cmd = app.add_subcommand(
        "calibrate", "Monte-Carlo error levels of a test over a theta grid");
    cmd->add_option("--model", cal_opts.model, "normal")
        ->check(CLI::IsMember({"normal"}));
    cmd->add_option("--h0", cal_opts.h0_text, "Hypothesis, e.g. \"theta>=0\"")
        ->required();
    cal_opts.alpha_opt =
        cmd->add_option("--alpha", cal_opts.alpha,
                        "Error-level knob; the estimator level is 1-alpha");
    cal_opts.level_opt = cmd->add_option("--level", cal_opts.level,
                                         "Confidence/credibility level directly");
    cal_opts.alpha_opt->excludes(cal_opts.level_opt);
    cmd->add_option("--estimator", cal_opts.estimator, "z, t, credible, hpd")
        ->check(CLI::IsMember({"z", "t", "credible", "hpd"}));
    cmd->add_option("--sigma", cal_opts.sigma, "Known observation sd");
    cmd->add_option("--prior-mean", cal_opts.prior_mean,
                    "Prior mean for credible/hpd");
    cmd->add_option("--prior-sd", cal_opts.prior_sd,
                    "Prior sd for credible/hpd");
    cmd->add_option("--theta-grid", cal_opts.theta_grid,
                    "True parameter values to calibrate at (comma separated)")
        ->required()
        ->delimiter(',');
    cmd->add_option("--n-sims", cal_opts.n_sims,
                    "Monte-Carlo replicates per grid point")
        ->required();
    cmd->add_option("--n-obs", cal_opts.n_obs, "Observations per replicate");
    cal_opts.fcp_prior_opt =
        cmd->add_option("--fcp-prior", cal_opts.fcp_prior,
                        "MEAN,SD of the prior for the false-conclusion rate")
            ->delimiter(',');
    cmd->add_option("--fcp-sims", cal_opts.fcp_sims,
                    "Replicates for the false-conclusion rate");
    cmd->add_option("--seed", cal_opts.seed, "Random seed");
    cmd->add_option("--threads", cal_opts.threads, "Worker threads");
    add_output_opts(cmd, cal_opts.io);
  }

  try {
    app.parse(argc, argv);
    if (app.got_subcommand("test")) return cmd_test(test_opts);
    if (app.got_subcommand("pragmatic")) return cmd_pragmatic(prag_opts);
    if (app.got_subcommand("sweep")) return cmd_sweep(sweep_opts);
    return cmd_calibrate(cal_opts);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 4;
  }
}
