#pragma once

#include <cstdint>
#include <cmath>
#include <numeric>
#include <vector>

namespace minionlab {

/// Counter-based pseudo-random generator (SplitMix64).  Output i of a stream
/// seeded with s is mix64(s + (i+1) * 0x9E3779B97F4A7C15).  Substreams for
/// parallel trials are derived by feeding the trial index through the same
/// mixer, so trial t of a run with master seed s is reproducible regardless
/// of scheduling.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : state_(seed) {}

  static constexpr std::uint64_t min() { return 0; }
  static constexpr std::uint64_t max() { return ~std::uint64_t{0}; }

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t operator()() { return next(); }

  /// Uniform double in [0, 1) with 53 random mantissa bits.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound); rejection from the top avoids modulo bias.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t limit = max() - max() % bound;
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % bound;
  }

  bool next_bernoulli(double p) { return next_double() < p; }

  /// Standard normal via Box-Muller; the spare value is cached.
  double next_gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  /// Fisher-Yates shuffle of 0..n-1.
  std::vector<int> next_permutation_of(int n) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n - 1; i > 0; --i) {
      const int j = static_cast<int>(next_below(static_cast<std::uint64_t>(i) + 1));
      std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
    }
    return perm;
  }

  /// Generator for trial `stream` of a run with seed `seed`.  Two mixing
  /// rounds keep substream states disjoint from main-stream outputs.
  static Rng substream(std::uint64_t seed, std::uint64_t stream) {
    Rng mixer(seed);
    const std::uint64_t a = mixer.next();
    Rng mixer2(stream ^ 0x6A09E667F3BCC909ull);
    return Rng(a ^ mixer2.next());
  }

 private:
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace minionlab
