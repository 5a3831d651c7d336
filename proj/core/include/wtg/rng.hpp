#pragma once

#include <cstdint>

namespace wtg {

/// Deterministic splitmix64 generator. Streams derived from (seed, id) are
/// independent of platform, thread count and call order, which is what the
/// reproducibility contract of the simulation harness rests on.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(scramble(seed)) {}

  /// Substream for (seed, stream_id), e.g. one per simulation replicate.
  static Rng stream(std::uint64_t seed, std::uint64_t stream_id) {
    Rng r(scramble(seed) ^ scramble(stream_id + 0x9E3779B97F4A7C15ULL));
    return r;
  }

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform draw strictly inside (0,1).
  double uniform01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  /// Uniform integer in [0, n).
  int uniform_int(int n) { return static_cast<int>(next_u64() % static_cast<std::uint64_t>(n)); }

 private:
  static std::uint64_t scramble(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

  std::uint64_t state_;
};

}  // namespace wtg
