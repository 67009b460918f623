#include "tern/math/student_t.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <utility>

#include "tern/errors.hpp"

namespace tern {

namespace {

// Continued fraction for the incomplete beta function (modified Lentz).
double betacf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 3e-16;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  throw NumericError("incomplete beta continued fraction did not converge (a=" +
                     std::to_string(a) + ", b=" + std::to_string(b) +
                     ", x=" + std::to_string(x) + ")");
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw UsageError("regularized_incomplete_beta: a and b must be positive");
  }
  if (!(x >= 0.0) || !(x <= 1.0)) {
    throw UsageError("regularized_incomplete_beta: x must be in [0,1]");
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double ln_bt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                       a * std::log(x) + b * std::log1p(-x);
  const double bt = std::exp(ln_bt);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return bt * betacf(a, b, x) / a;
  }
  return 1.0 - bt * betacf(b, a, 1.0 - x) / b;
}

double t_cdf(double x, double df) {
  if (!(df > 0.0)) {
    throw UsageError("t_cdf: df must be positive");
  }
  if (std::isnan(x)) return x;
  if (std::isinf(x)) return x > 0 ? 1.0 : 0.0;
  const double r = df / (df + x * x);
  const double i = regularized_incomplete_beta(0.5 * df, 0.5, r);
  return x > 0.0 ? 1.0 - 0.5 * i : 0.5 * i;
}

double t_quantile(double p, double df) {
  if (!(p > 0.0) || !(p < 1.0)) {
    throw UsageError("t_quantile: p must be in (0,1), got " + std::to_string(p));
  }
  if (!(df > 0.0)) {
    throw UsageError("t_quantile: df must be positive");
  }

  static std::mutex cache_mutex;
  static std::map<std::pair<double, double>, double> cache;
  const std::pair<double, double> key{df, p};
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }

  if (p == 0.5) return 0.0;
  // Work on the upper half and mirror.
  const double pu = p > 0.5 ? p : 1.0 - p;

  double lo = 0.0;
  double hi = 2.0;
  while (t_cdf(hi, df) < pu) {
    hi *= 2.0;
    if (hi > 1e300) {
      throw NumericError("t_quantile: bracket expansion failed");
    }
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (t_cdf(mid, df) < pu) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-13 * (1.0 + hi)) break;
  }
  double q = 0.5 * (lo + hi);
  if (p < 0.5) q = -q;

  std::lock_guard<std::mutex> lock(cache_mutex);
  cache.emplace(key, q);
  return q;
}

}  // namespace tern
