#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "tern/errors.hpp"
#include "tern/math/normal.hpp"
#include "tern/models.hpp"
#include "tern/rng.hpp"

using namespace tern;

namespace {

Eigen::VectorXd vec1(double a) {
  Eigen::VectorXd v(1);
  v << a;
  return v;
}

Eigen::VectorXd vec2(double a, double b) {
  Eigen::VectorXd v(2);
  v << a, b;
  return v;
}

Eigen::VectorXd vec3(double a, double b, double c) {
  Eigen::VectorXd v(3);
  v << a, b, c;
  return v;
}

}  // namespace

TEST_CASE("normal model metadata and density") {
  auto m = normal_mean_model(1.0, 1);
  CHECK(m->param_dim() == 1);
  CHECK(m->param_names() == std::vector<std::string>{"theta"});
  CHECK(m->future_len() == 1);

  FutureSample z;
  z.values = {0.0};
  CHECK(std::abs(m->log_density(z, vec1(0.0)) - (-0.9189385332046727)) < 1e-15);

  auto m3 = normal_mean_model(1.3, 3);
  FutureSample z3;
  z3.values = {0.4, -0.7, 2.2};
  double per_coord = 0.0;
  for (double v : z3.values) per_coord += norm_log_pdf(v, 0.5, 1.3);
  CHECK(std::abs(m3->log_density(z3, vec1(0.5)) - per_coord) < 1e-12);
}

TEST_CASE("normal model validation") {
  CHECK_THROWS_AS(normal_mean_model(0.0, 1), UsageError);
  CHECK_THROWS_AS(normal_mean_model(1.0, 0), UsageError);
  auto m = normal_mean_model(1.0, 2);
  FutureSample wrong;
  wrong.values = {0.0};
  CHECK_THROWS_AS(m->log_density(wrong, vec1(0.0)), UsageError);
  FutureSample ok;
  ok.values = {0.0, 0.0};
  CHECK_THROWS_AS(m->log_density(ok, vec2(0.0, 1.0)), UsageError);
  RngStream rng(StreamKey::from_seed(1).child(0));
  CHECK_THROWS_AS(m->sample_dataset(vec1(0.0), 0, rng), UsageError);
}

TEST_CASE("normal model sampling is keyed and centered") {
  auto m = normal_mean_model(2.0, 5);
  RngStream r1(StreamKey::from_seed(77).child(3));
  RngStream r2(StreamKey::from_seed(77).child(3));
  const FutureSample a = m->sample(vec1(1.5), r1);
  const FutureSample b = m->sample(vec1(1.5), r2);
  CHECK(a.values == b.values);
  CHECK(a.values.size() == 5);

  RngStream rng(StreamKey::from_seed(78).child(0));
  double sum = 0.0;
  const int draws = 20000;
  for (int i = 0; i < draws; ++i) {
    for (double v : m->sample(vec1(1.5), rng).values) sum += v;
  }
  const double mean = sum / (5.0 * draws);
  CHECK(std::abs(mean - 1.5) < 3.0 * 2.0 / std::sqrt(5.0 * draws));
}

TEST_CASE("normal model estimate is the sample mean") {
  auto m = normal_mean_model(1.0, 1);
  const Eigen::VectorXd t = m->estimate(Dataset::normal({1.0, 2.0, 6.0}));
  CHECK(t.size() == 1);
  CHECK(t[0] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK_THROWS_AS(m->estimate(Dataset::two_sample({1}, {2})), UsageError);
  CHECK_THROWS_AS(m->estimate(Dataset::normal({})), UsageError);
}

TEST_CASE("normal exact pragmatic band") {
  auto m = normal_mean_model(1.0, 1);
  const auto band = m->exact_pragmatic_interval(0.0, Eigen::VectorXd(0), 0.95);
  REQUIRE(band.has_value());
  CHECK(band->lo_open);
  CHECK(band->hi_open);
  CHECK(std::abs(band->lo + 3.289707253902944) < 1e-9);
  CHECK(std::abs(band->hi - 3.289707253902944) < 1e-9);

  auto m4 = normal_mean_model(1.0, 4);
  const auto band4 = m4->exact_pragmatic_interval(0.0, Eigen::VectorXd(0), 0.95);
  CHECK(std::abs(band4->hi - 3.289707253902944 / 2.0) < 1e-9);

  CHECK_THROWS_AS(m->exact_pragmatic_interval(0.0, vec1(1.0), 0.95), UsageError);
  CHECK_THROWS_AS(m->exact_pragmatic_interval(0.0, Eigen::VectorXd(0), 0.5),
                  UsageError);
  CHECK_THROWS_AS(m->exact_pragmatic_interval(0.0, Eigen::VectorXd(0), 1.0),
                  UsageError);
}

TEST_CASE("two-sample parameterizations agree on the density") {
  auto plain = two_sample_normal_model(0.8, 2);
  auto diff = two_sample_diff_model(0.8, 2);
  CHECK(plain->param_names() == std::vector<std::string>{"mu_a", "mu_b"});
  CHECK(diff->param_names() == std::vector<std::string>{"delta", "mu_b"});
  CHECK(plain->future_len() == 4);

  FutureSample z;
  z.values = {1.0, 0.5, -0.3, 0.1};
  const double via_means = plain->log_density(z, vec2(1.2, -0.4));
  const double via_diff = diff->log_density(z, vec2(1.6, -0.4));
  CHECK(std::abs(via_means - via_diff) < 1e-12);

  double manual = 0.0;
  manual += norm_log_pdf(1.0, 1.2, 0.8);
  manual += norm_log_pdf(0.5, 1.2, 0.8);
  manual += norm_log_pdf(-0.3, -0.4, 0.8);
  manual += norm_log_pdf(0.1, -0.4, 0.8);
  CHECK(std::abs(via_means - manual) < 1e-12);
}

TEST_CASE("two-sample future samples put group a first") {
  auto m = two_sample_normal_model(1.0, 50);
  RngStream rng(StreamKey::from_seed(79).child(0));
  const FutureSample z = m->sample(vec2(10.0, -10.0), rng);
  REQUIRE(z.values.size() == 100);
  double ma = 0.0, mb = 0.0;
  for (int i = 0; i < 50; ++i) ma += z.values[static_cast<std::size_t>(i)];
  for (int i = 50; i < 100; ++i) mb += z.values[static_cast<std::size_t>(i)];
  CHECK(std::abs(ma / 50.0 - 10.0) < 1.0);
  CHECK(std::abs(mb / 50.0 + 10.0) < 1.0);
}

TEST_CASE("two-sample estimates") {
  const Dataset data = Dataset::two_sample({1.0, 2.0, 3.0}, {4.0, 6.0});
  auto plain = two_sample_normal_model(1.0, 1);
  auto diff = two_sample_diff_model(1.0, 1);
  const Eigen::VectorXd tp = plain->estimate(data);
  CHECK(tp[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(tp[1] == doctest::Approx(5.0).epsilon(1e-12));
  const Eigen::VectorXd td = diff->estimate(data);
  CHECK(td[0] == doctest::Approx(-3.0).epsilon(1e-12));
  CHECK(td[1] == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("two-sample dataset sampling sizes") {
  auto m = two_sample_diff_model(1.0, 1);
  RngStream rng(StreamKey::from_seed(80).child(0));
  const Dataset d = m->sample_dataset(vec2(0.0, 0.0), 7, rng);
  CHECK(d.kind == Dataset::Kind::TwoSample);
  CHECK(d.a.size() == 7);
  CHECK(d.b.size() == 7);
}

TEST_CASE("two-sample exact band matches the one-sample band") {
  auto diff = two_sample_diff_model(1.0, 1);
  auto normal = normal_mean_model(1.0, 1);
  const auto a = diff->exact_pragmatic_interval(0.0, vec1(5.0), 0.95);
  const auto b = normal->exact_pragmatic_interval(0.0, Eigen::VectorXd(0), 0.95);
  REQUIRE(a.has_value());
  CHECK(a->lo == b->lo);
  CHECK(a->hi == b->hi);
  CHECK_THROWS_AS(diff->exact_pragmatic_interval(0.0, Eigen::VectorXd(0), 0.95),
                  UsageError);
}

TEST_CASE("gravity factory validation") {
  CHECK_THROWS_AS(gravity_regression_model({1.0}), UsageError);
  CHECK_THROWS_AS(gravity_regression_model({1.0, -2.0}), UsageError);
  CHECK_THROWS_AS(gravity_regression_model({1.0, 1.0}), UsageError);
  CHECK_THROWS_AS(gravity_regression_model({1.0, 2.0}, 0), UsageError);
}

TEST_CASE("gravity estimate recovers noiseless parameters") {
  const double b1 = 0.4517539514526256;  // sqrt(2/9.8)
  std::vector<double> hs, ts;
  for (int rep = 0; rep < 2; ++rep) {
    for (double h : {0.5, 1.0, 2.0}) {
      hs.push_back(h);
      ts.push_back(0.2 + b1 * std::sqrt(h));
    }
  }
  auto m = gravity_regression_model({0.5, 1.0, 2.0});
  const Eigen::VectorXd t = m->estimate(Dataset::gravity(hs, ts));
  REQUIRE(t.size() == 3);
  CHECK(std::abs(t[0] - 9.8) < 1e-6);
  CHECK(std::abs(t[1] - 0.2) < 1e-8);
  CHECK(t[2] < 1e-7);

  CHECK_THROWS_AS(m->estimate(Dataset::normal({1, 2, 3})), UsageError);
  CHECK_THROWS_AS(m->estimate(Dataset::gravity({1.0, 2.0}, {0.6, 0.8})),
                  UsageError);
  // Falling times that shrink with height give a negative slope.
  CHECK_THROWS_AS(
      m->estimate(Dataset::gravity({0.5, 1.0, 2.0}, {0.9, 0.6, 0.3})),
      NumericError);
}

TEST_CASE("gravity dataset sampling cycles the height design") {
  auto m = gravity_regression_model({0.4, 0.8, 1.2, 1.6});
  RngStream rng(StreamKey::from_seed(81).child(0));
  const Dataset d = m->sample_dataset(vec3(9.8, 0.2, 1e-9), 10, rng);
  REQUIRE(d.height.size() == 10);
  CHECK(d.height[0] == 0.4);
  CHECK(d.height[3] == 1.6);
  CHECK(d.height[4] == 0.4);
  CHECK(d.height[9] == 0.8);
  const double b1 = std::sqrt(2.0 / 9.8);
  for (std::size_t i = 0; i < 10; ++i) {
    CHECK(std::abs(d.time[i] - (0.2 + b1 * std::sqrt(d.height[i]))) < 1e-7);
  }
}

TEST_CASE("gravity density requires positive g and sigma") {
  auto m = gravity_regression_model({1.0, 2.0});
  FutureSample z;
  z.values = {0.6, 0.8};
  CHECK_THROWS_AS(m->log_density(z, vec3(-9.8, 0.2, 0.1)), NumericError);
  CHECK_THROWS_AS(m->log_density(z, vec3(9.8, 0.2, 0.0)), NumericError);
  CHECK(std::isfinite(m->log_density(z, vec3(9.8, 0.2, 0.1))));
}

TEST_CASE("gravity exact band follows the slope-space formula") {
  auto m = gravity_regression_model({1.0, 3.0});
  const double sigma = 0.1;
  const double tau = 0.95;
  const auto band = m->exact_pragmatic_interval(9.8, vec2(0.2, sigma), tau);
  REQUIRE(band.has_value());
  CHECK(band->lo_open);
  CHECK(band->hi_open);
  const double norm = 2.0;  // sqrt(1.0 + 3.0)
  const double w = 2.0 * sigma * 1.644853626951472 / norm;
  const double b1 = 0.4517539514526256;
  CHECK(std::abs(band->lo - 2.0 / ((b1 + w) * (b1 + w))) < 1e-9);
  CHECK(std::abs(band->hi - 2.0 / ((b1 - w) * (b1 - w))) < 1e-9);
  CHECK(band->contains(9.8));

  // future_reps scales the design norm by sqrt(reps).
  auto m4 = gravity_regression_model({1.0, 3.0}, 4);
  const auto band4 = m4->exact_pragmatic_interval(9.8, vec2(0.2, sigma), tau);
  const double w4 = w / 2.0;
  CHECK(std::abs(band4->hi - 2.0 / ((b1 - w4) * (b1 - w4))) < 1e-9);

  // A wide band's upper end runs off to infinity and stays open.
  const auto wide = m->exact_pragmatic_interval(9.8, vec2(0.2, 1.0), tau);
  CHECK(wide->hi == std::numeric_limits<double>::infinity());
  CHECK(wide->hi_open);

  CHECK_THROWS_AS(m->exact_pragmatic_interval(9.8, vec2(0.2, 0.0), tau),
                  NumericError);
  CHECK_THROWS_AS(m->exact_pragmatic_interval(9.8, vec1(0.2), tau), UsageError);
  CHECK_THROWS_AS(m->exact_pragmatic_interval(-1.0, vec2(0.2, 0.1), tau),
                  UsageError);
}

TEST_CASE("sampled log density has the Gaussian entropy mean") {
  auto m = normal_mean_model(1.5, 4);
  RngStream rng(StreamKey::from_seed(82).child(0));
  const int draws = 20000;
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < draws; ++i) {
    const double l = m->log_density(m->sample(vec1(0.7), rng), vec1(0.7));
    sum += l;
    sumsq += l * l;
  }
  const double mean = sum / draws;
  const double var = sumsq / draws - mean * mean;
  const double expect = -2.0 * (std::log(2.0 * M_PI * 2.25) + 1.0);
  CHECK(std::abs(mean - expect) < 3.0 * std::sqrt(var / draws));
}

TEST_CASE("models without a closed-form band return nothing") {
  struct Opaque final : Model {
    std::vector<std::string> names{"theta"};
    int param_dim() const override { return 1; }
    const std::vector<std::string>& param_names() const override {
      return names;
    }
    std::string future_design() const override { return "none"; }
    std::size_t future_len() const override { return 1; }
    double log_density(const FutureSample&,
                       const Eigen::VectorXd&) const override {
      return 0.0;
    }
    FutureSample sample(const Eigen::VectorXd&, RngStream&) const override {
      return FutureSample{{0.0}};
    }
    Eigen::VectorXd estimate(const Dataset&) const override {
      return Eigen::VectorXd::Zero(1);
    }
    Dataset sample_dataset(const Eigen::VectorXd&, long,
                           RngStream&) const override {
      return Dataset::normal({0.0});
    }
  };
  Opaque m;
  CHECK_FALSE(
      m.exact_pragmatic_interval(0.0, Eigen::VectorXd(0), 0.95).has_value());
}
