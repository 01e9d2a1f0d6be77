#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

namespace confpred {

/// Counter-based pseudo-random generator.
///
/// Draw i of a stream is mix(key, i), where mix is a splitmix64-style
/// finalizer. Streams are fully determined by their seed, independent of
/// call history elsewhere, and cheap to fork: child(tag) derives a new
/// stream whose key mixes in the tag. Every stochastic operation in this
/// library takes its randomness from one of these, so results are
/// bit-reproducible given the seeds.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : key_(mix64(seed, 0x6a09e667f3bcc909ull)) {}

  /// Independent stream derived from this one's seed and a tag.
  CounterRng child(std::uint64_t tag) const { return CounterRng(mix64(key_, tag)); }

  std::uint64_t next_u64() { return mix64(key_, counter_++); }

  /// Uniform on [0, 1).
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1]; safe to pass to log().
  double uniform01_open() { return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  bool bernoulli(double p) { return uniform01() < p; }

  /// Standard normal via Box-Muller (two uniforms per draw, no cached spare).
  double normal() {
    const double u1 = uniform01_open();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
  }

  /// Student t with 2 degrees of freedom: Z / sqrt(E), E ~ Exp(1),
  /// using chi2(2)/2 ~ Exp(1).
  double student_t2() {
    const double z = normal();
    const double e = -std::log(uniform01_open());
    return z / std::sqrt(e);
  }

  /// Skew-normal SN(0, 1, alpha) via the two-normal representation
  /// delta*|U| + sqrt(1-delta^2)*V with delta = alpha/sqrt(1+alpha^2).
  double skew_normal(double alpha) {
    const double delta = alpha / std::sqrt(1.0 + alpha * alpha);
    const double u = normal();
    const double v = normal();
    return delta * std::abs(u) + std::sqrt(1.0 - delta * delta) * v;
  }

  /// Unbiased integer in [0, n) by rejection.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return x % n;
  }

  /// Fisher-Yates permutation of {0, ..., n-1}.
  std::vector<int> permutation(int n) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    for (int i = n - 1; i > 0; --i) {
      const int j = static_cast<int>(below(static_cast<std::uint64_t>(i) + 1));
      std::swap(p[i], p[j]);
    }
    return p;
  }

 private:
  static std::uint64_t mix64(std::uint64_t key, std::uint64_t ctr) {
    std::uint64_t z = key + 0x9e3779b97f4a7c15ull * (ctr + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace confpred
