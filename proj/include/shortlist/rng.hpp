#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace shortlist {

/// Deterministic random stream backed by mt19937_64.
///
/// All distribution code is implemented here instead of relying on
/// std::*_distribution, whose algorithms the standard leaves unspecified.
/// Two streams constructed from the same seed words produce identical
/// sequences on every platform, which the reproducibility contract of the
/// experiment harness depends on.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t s0) { seed_words({s0}); }
  RandomStream(std::uint64_t s0, std::uint64_t s1) { seed_words({s0, s1}); }
  RandomStream(std::uint64_t s0, std::uint64_t s1, std::uint64_t s2) {
    seed_words({s0, s1, s2});
  }

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform double in [0, 1) with 53-bit resolution.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [lo, hi], unbiased (rejection on the tail zone).
  int uniform_int(int lo, int hi) {
    const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = range * (~std::uint64_t{0} / range);
    std::uint64_t r;
    do {
      r = gen_();
    } while (r >= limit);
    return lo + static_cast<int>(r % range);
  }

  bool bernoulli(double p) { return uniform01() < p; }

  /// Box-Muller; consumes exactly two uniforms per call (no cached spare).
  double normal(double mean, double sd) {
    double u1 = uniform01();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return mean + sd * r * std::cos(2.0 * 3.14159265358979323846 * u2);
  }

  /// Rejection sampling: redraw until the value lands in [lo, hi].
  double truncated_normal(double mean, double sd, double lo, double hi) {
    for (;;) {
      const double x = normal(mean, sd);
      if (x >= lo && x <= hi) return x;
    }
  }

 private:
  void seed_words(std::initializer_list<std::uint64_t> words) {
    // seed_seq consumes 32-bit chunks; split each word.
    std::uint32_t chunks[6];
    int k = 0;
    for (std::uint64_t w : words) {
      chunks[k++] = static_cast<std::uint32_t>(w);
      chunks[k++] = static_cast<std::uint32_t>(w >> 32);
    }
    std::seed_seq seq(chunks, chunks + k);
    gen_.seed(seq);
  }

  std::mt19937_64 gen_;
};

}  // namespace shortlist
