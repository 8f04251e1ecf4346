#pragma once

#include <cstdint>
#include <random>

namespace triage {

/// SplitMix64 finalizer. Used to turn (seed, stream) pairs into well-spread
/// engine seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Named sub-streams of one simulation. Each consumes its own engine so a
/// change in policy never perturbs the generated workload.
enum class StreamId : std::uint64_t {
  Arrivals = 1,
  Labels = 2,
  Classifier = 3,
  Reporting = 4,
};

/// Seeded random stream. Uniforms are built from the raw 64-bit engine output
/// rather than std::uniform_real_distribution so sequences are identical
/// across standard library implementations.
class RandomStream {
public:
  explicit RandomStream(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  RandomStream(std::uint64_t master_seed, StreamId id)
      : engine_(splitmix64(master_seed ^
                           splitmix64(static_cast<std::uint64_t>(id)))) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return uniform() < p; }

  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) {
    // Lemire's multiply-shift with rejection; unbiased.
    std::uint64_t x = engine_();
    __uint128_t m = static_cast<__uint128_t>(x) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
      const std::uint64_t threshold = -n % n;
      while (low < threshold) {
        x = engine_();
        m = static_cast<__uint128_t>(x) * n;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

private:
  std::mt19937_64 engine_;
};

} // namespace triage
