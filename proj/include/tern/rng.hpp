#pragma once

#include <cstdint>

#include "tern/math/normal.hpp"

namespace tern {

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

// 64-bit finalizer (splitmix64 mixing function).
inline std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

// Hierarchical stream key. child(i) derives a statistically independent
// substream, so a simulation can hand replicate i (or grid point i) its own
// generator without any cross-thread coordination. The derivation is pure, so
// results never depend on evaluation order or worker count.
struct StreamKey {
  std::uint64_t state;

  static StreamKey from_seed(std::uint64_t seed) {
    return StreamKey{mix64(seed + kGoldenGamma)};
  }

  StreamKey child(std::uint64_t idx) const {
    return StreamKey{mix64(state ^ mix64(idx + kGoldenGamma))};
  }
};

// splitmix64 sequence generator. Tiny state, O(1) construction; normal
// variates use the inverse CDF so identical keys give bit-identical draws on
// every platform.
class RngStream {
 public:
  explicit RngStream(StreamKey key) : state_(key.state) {}

  std::uint64_t next_u64() {
    state_ += kGoldenGamma;
    return mix64(state_);
  }

  // Uniform on (0,1), endpoints excluded. 52-bit resolution keeps the
  // (k + 0.5) * 2^-52 arithmetic exact.
  double uniform01() {
    const double k = static_cast<double>(next_u64() >> 12);
    return (k + 0.5) * 0x1.0p-52;
  }

  double normal01() { return norm_quantile(uniform01()); }

  double normal(double mean, double sd) { return mean + sd * normal01(); }

  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::uint64_t state_;
};

}  // namespace tern
