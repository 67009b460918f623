#include <cmath>
#include <vector>

#include "doctest.h"
#include "tern/errors.hpp"
#include "tern/estimators.hpp"
#include "tern/rng.hpp"

using namespace tern;

namespace {
const double kZ975 = 1.959963984540054;  // frozen reference quantile
}

TEST_CASE("z_interval reference values") {
  const Interval unit = z_interval(0.0, 1, 1.0, 0.95).hull1();
  CHECK(std::abs(unit.lo + kZ975) < 1e-8);
  CHECK(std::abs(unit.hi - kZ975) < 1e-8);

  const Interval shifted = z_interval(3.0, 4, 2.0, 0.95).hull1();
  CHECK(std::abs(shifted.lo - 1.040036015459946) < 5e-4);
  CHECK(std::abs(shifted.hi - 4.959963984540054) < 5e-4);
  CHECK(std::abs(shifted.lo - 1.040036015459946) < 1e-8);
}

TEST_CASE("z_interval width shrinks like 1/sqrt(n)") {
  double prev = z_interval(0.0, 1, 1.0, 0.95).hull1().hi;
  for (long n : {10L, 1000L, 100000L}) {
    const double hw = z_interval(0.0, n, 1.0, 0.95).hull1().hi;
    CHECK(hw < prev);
    prev = hw;
  }
  CHECK(z_interval(0.0, 100000000L, 1.0, 0.95).hull1().hi < 1e-3);
}

TEST_CASE("z_interval argument validation") {
  CHECK_THROWS_AS(z_interval(0, 1, 1.0, 0.0), UsageError);
  CHECK_THROWS_AS(z_interval(0, 1, 1.0, 1.0), UsageError);
  CHECK_THROWS_AS(z_interval(0, 1, 0.0, 0.95), UsageError);
  CHECK_THROWS_AS(z_interval(0, 0, 1.0, 0.95), UsageError);
}

TEST_CASE("normal posterior credible interval reference values") {
  // Prior N(0,1), one observation with sd 1: posterior N(x/2, 1/2).
  const double hw = 1.385903824349678;  // z975 / sqrt(2), frozen
  const Interval at_zero =
      normal_posterior_credible(0.0, 0.0, 1.0, 1.0, 0.95).hull1();
  CHECK(std::abs(at_zero.lo + hw) < 1e-8);
  CHECK(std::abs(at_zero.hi - hw) < 1e-8);

  const Interval at_two =
      normal_posterior_credible(2.0, 0.0, 1.0, 1.0, 0.95).hull1();
  CHECK(std::abs(at_two.lo - (1.0 - hw)) < 5e-4);
  CHECK(std::abs(at_two.hi - (1.0 + hw)) < 5e-4);
  CHECK(std::abs(at_two.lo - (-0.385903824349678)) < 1e-8);
}

TEST_CASE("flat prior recovers the z interval") {
  const Interval credible =
      normal_posterior_credible(1.3, 0.0, 1e8, 1.0, 0.95).hull1();
  const Interval z = z_interval(1.3, 1, 1.0, 0.95).hull1();
  CHECK(std::abs(credible.lo - z.lo) < 1e-6);
  CHECK(std::abs(credible.hi - z.hi) < 1e-6);
}

TEST_CASE("credible_n with one observation matches the single-x form") {
  const Interval a = normal_posterior_credible(0.7, 0.2, 1.5, 2.0, 0.9).hull1();
  const Interval b =
      normal_posterior_credible_n(0.7, 1, 0.2, 1.5, 2.0, 0.9).hull1();
  CHECK(a.lo == b.lo);
  CHECK(a.hi == b.hi);
}

TEST_CASE("credible_n concentrates as n grows") {
  const Interval tight =
      normal_posterior_credible_n(1.0, 1000000, 0.0, 1.0, 1.0, 0.95).hull1();
  CHECK(tight.hi - tight.lo < 0.005);
  CHECK(std::abs(0.5 * (tight.lo + tight.hi) - 1.0) < 0.001);
}

TEST_CASE("t_interval of {-1, 1} uses the df=1 quantile") {
  const Interval iv = t_interval({-1.0, 1.0}, 0.95).hull1();
  // mean 0, s = sqrt(2), s/sqrt(2) = 1, so endpoints are the t quantile.
  CHECK(std::abs(iv.lo + 12.7062047364321) < 0.01);
  CHECK(std::abs(iv.hi - 12.7062047364321) < 0.01);
  CHECK(std::abs(iv.hi - 12.7062047364321) < 1e-6);
}

TEST_CASE("t_interval rejects degenerate samples") {
  CHECK_THROWS_AS(t_interval({2.0}, 0.95), UsageError);
  CHECK_THROWS_AS(t_interval({3.0, 3.0, 3.0}, 0.95), UsageError);
  CHECK_THROWS_AS(t_interval({}, 0.95), UsageError);
}

TEST_CASE("t_interval coverage at n=10") {
  RngStream rng(StreamKey::from_seed(501).child(0));
  const int sims = 10000;
  int covered = 0;
  std::vector<double> sample(10);
  for (int s = 0; s < sims; ++s) {
    for (double& v : sample) v = rng.normal01();
    if (t_interval(sample, 0.95).contains(0.0)) ++covered;
  }
  const double rate = static_cast<double>(covered) / sims;
  CHECK(std::abs(rate - 0.95) < 0.01);
}

TEST_CASE("t_interval is insensitive to observation order") {
  const std::vector<double> data{0.3, -1.2, 2.5, 0.7, -0.4, 1.9};
  const std::vector<double> shuffled{1.9, 0.3, -0.4, 2.5, -1.2, 0.7};
  const Interval a = t_interval(data, 0.9).hull1();
  const Interval b = t_interval(shuffled, 0.9).hull1();
  CHECK(std::abs(a.lo - b.lo) < 1e-12);
  CHECK(std::abs(a.hi - b.hi) < 1e-12);
}

TEST_CASE("two_sample_diff_interval symmetry properties") {
  const std::vector<double> a{1.0, 2.0, 3.0, 4.0};
  const std::vector<double> b{0.5, 1.5, 2.0, 4.5};
  const Interval same = two_sample_diff_interval(a, a, 0.95).hull1();
  CHECK(same.lo == -same.hi);

  const Interval ab = two_sample_diff_interval(a, b, 0.95).hull1();
  const Interval ba = two_sample_diff_interval(b, a, 0.95).hull1();
  CHECK(ab.lo == -ba.hi);
  CHECK(ab.hi == -ba.lo);
}

TEST_CASE("two_sample_diff_interval matches the pooled formula") {
  const std::vector<double> a{1.0, 2.0, 3.0, 4.0, 2.5};
  const std::vector<double> b{0.5, 1.5, 2.0};
  auto mean = [](const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m += x;
    return m / static_cast<double>(v.size());
  };
  auto ss = [&](const std::vector<double>& v) {
    const double m = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s;
  };
  const double diff = mean(a) - mean(b);
  const double sp2 = (ss(a) + ss(b)) / 6.0;  // df = 5 + 3 - 2
  const double se = std::sqrt(sp2 * (1.0 / 5.0 + 1.0 / 3.0));
  const double t6 = 2.4469118511449692;  // frozen qt(0.975, 6)
  const Interval iv = two_sample_diff_interval(a, b, 0.95).hull1();
  CHECK(std::abs(iv.lo - (diff - t6 * se)) < 1e-6);
  CHECK(std::abs(iv.hi - (diff + t6 * se)) < 1e-6);
}

TEST_CASE("two_sample_diff_interval concentrates around the true gap") {
  RngStream rng(StreamKey::from_seed(502).child(0));
  int inside = 0;
  const int sims = 200;
  std::vector<double> a(200), b(200);
  for (int s = 0; s < sims; ++s) {
    for (double& v : a) v = rng.normal(5.0, 1.0);
    for (double& v : b) v = rng.normal(0.0, 1.0);
    const Interval iv = two_sample_diff_interval(a, b, 0.95).hull1();
    if (iv.lo >= 4.5 && iv.hi <= 5.5) ++inside;
  }
  CHECK(inside >= 194);  // nominal probability of containment ~0.99+
}

TEST_CASE("two_sample_diff_interval input validation") {
  CHECK_THROWS_AS(two_sample_diff_interval({1.0}, {1.0, 2.0}, 0.95),
                  UsageError);
  CHECK_THROWS_AS(two_sample_diff_interval({1.0, 1.0}, {1.0, 1.0}, 0.95),
                  UsageError);  // zero pooled variance
}

TEST_CASE("noiseless gravity data pins g at 9.8") {
  const double b1 = 0.4517539514526256;  // sqrt(2/9.8), frozen
  std::vector<double> heights;
  std::vector<double> times;
  for (int rep = 0; rep < 3; ++rep) {
    for (double h : {0.5, 1.0, 1.5, 2.0}) {
      heights.push_back(h);
      times.push_back(0.2 + b1 * std::sqrt(h));
    }
  }
  const Interval g = gravity_g_interval(heights, times, 0.95).hull1();
  CHECK(g.hi - g.lo < 1e-4);
  CHECK(std::abs(0.5 * (g.lo + g.hi) - 9.8) < 1e-3);
}

TEST_CASE("g interval is the monotone image of the beta1 interval") {
  RngStream rng(StreamKey::from_seed(503).child(0));
  std::vector<double> heights;
  std::vector<double> times;
  for (int rep = 0; rep < 10; ++rep) {
    for (double h : {0.5, 1.0, 1.5, 2.0}) {
      heights.push_back(h);
      times.push_back(0.2 + 0.4517539514526256 * std::sqrt(h) +
                      rng.normal(0.0, 0.02));
    }
  }
  Eigen::MatrixXd X(static_cast<Eigen::Index>(heights.size()), 2);
  Eigen::VectorXd y(static_cast<Eigen::Index>(times.size()));
  for (std::size_t i = 0; i < heights.size(); ++i) {
    X(static_cast<Eigen::Index>(i), 0) = 1.0;
    X(static_cast<Eigen::Index>(i), 1) = std::sqrt(heights[i]);
    y[static_cast<Eigen::Index>(i)] = times[i];
  }
  const Interval b1 = regression_coef_interval(X, y, 1, 0.95).hull1();
  const Interval g = gravity_g_interval(heights, times, 0.95).hull1();
  CHECK(std::abs(g.lo - 2.0 / (b1.hi * b1.hi)) < 1e-10);
  CHECK(std::abs(g.hi - 2.0 / (b1.lo * b1.lo)) < 1e-10);
}

TEST_CASE("regression interval error paths") {
  Eigen::MatrixXd X(4, 2);
  Eigen::VectorXd y(4);
  X << 1, 1, 1, 1, 1, 1, 1, 1;  // rank deficient
  y << 1, 2, 3, 4;
  CHECK_THROWS_AS(regression_coef_interval(X, y, 1, 0.95), NumericError);

  Eigen::MatrixXd X2(4, 2);
  X2 << 1, 0.5, 1, 1.0, 1, 1.5, 1, 2.0;
  CHECK_THROWS_AS(regression_coef_interval(X2, y, 5, 0.95), UsageError);
  CHECK_THROWS_AS(regression_coef_interval(X2, y, -1, 0.95), UsageError);

  // Flat times give a beta1 interval around 0: the g map is undefined.
  const std::vector<double> h{0.5, 1.0, 1.5, 2.0, 0.5, 1.0, 1.5, 2.0};
  const std::vector<double> t_flat{0.2, 0.21, 0.19, 0.2, 0.2, 0.19, 0.21, 0.2};
  CHECK_THROWS_AS(gravity_g_interval(h, t_flat, 0.95), NumericError);
}

TEST_CASE("z coverage simulation") {
  RngStream rng(StreamKey::from_seed(504).child(0));
  const int sims = 10000;
  const long n = 5;
  int covered = 0;
  for (int s = 0; s < sims; ++s) {
    double sum = 0.0;
    for (long i = 0; i < n; ++i) sum += rng.normal(2.0, 1.0);
    if (z_interval(sum / static_cast<double>(n), n, 1.0, 0.95).contains(2.0)) {
      ++covered;
    }
  }
  const double rate = static_cast<double>(covered) / sims;
  CHECK(std::abs(rate - 0.95) < 3.0 * std::sqrt(0.95 * 0.05 / sims));
}

TEST_CASE("credible coverage under the prior") {
  RngStream rng(StreamKey::from_seed(505).child(0));
  const int sims = 10000;
  int covered = 0;
  for (int s = 0; s < sims; ++s) {
    const double theta = rng.normal01();           // theta ~ N(0,1)
    const double x = rng.normal(theta, 1.0);       // x | theta ~ N(theta,1)
    if (normal_posterior_credible(x, 0.0, 1.0, 1.0, 0.95).contains(theta)) {
      ++covered;
    }
  }
  const double rate = static_cast<double>(covered) / sims;
  CHECK(std::abs(rate - 0.95) < 3.0 * std::sqrt(0.95 * 0.05 / sims));
}

TEST_CASE("RegionEstimator dispatch honors the dataset kind") {
  RegionEstimator est;
  est.kind = RegionEstimator::Kind::ZInterval;
  est.level = 0.95;
  est.sigma = 1.0;
  CHECK_THROWS_AS(est(Dataset::two_sample({1, 2}, {3, 4})), UsageError);

  est.kind = RegionEstimator::Kind::TwoSampleTInterval;
  CHECK_THROWS_AS(est(Dataset::normal({1, 2, 3})), UsageError);

  const Interval direct = two_sample_diff_interval({1, 2, 3}, {2, 3, 5}, 0.95).hull1();
  const Interval via = est(Dataset::two_sample({1, 2, 3}, {2, 3, 5})).hull1();
  CHECK(via.lo == direct.lo);
  CHECK(via.hi == direct.hi);
}

TEST_CASE("HPD kind equals the central credible kind for the normal posterior") {
  RegionEstimator hpd;
  hpd.kind = RegionEstimator::Kind::NormalPosteriorHPD;
  hpd.level = 0.9;
  hpd.prior_mean = 0.5;
  hpd.prior_sd = 2.0;
  hpd.obs_sd = 1.0;
  RegionEstimator central = hpd;
  central.kind = RegionEstimator::Kind::NormalPosteriorCredible;
  const Dataset data = Dataset::normal({1.7});
  const Interval a = hpd(data).hull1();
  const Interval b = central(data).hull1();
  CHECK(a.lo == b.lo);
  CHECK(a.hi == b.hi);
  CHECK(hpd.kind_name() == std::string("hpd"));
}
