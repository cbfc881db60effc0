#pragma once

#include <array>
#include <cstdint>

namespace gmgd {

/// Counter-seeded xoshiro256++ generator.
///
/// Every sampler in the library takes an Rng supplied by the caller, so a
/// single master seed can be fanned out into independent, reproducible
/// substreams: Rng::substream(seed, stream, index) derives its state from
/// (seed, stream, index) through splitmix64 finalizers.  Two substreams with
/// different (stream, index) keys are statistically independent for Monte
/// Carlo purposes and their draws are identical across runs and platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) { reseed(seed, 0, 0); }
  Rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    reseed(seed, stream, index);
  }

  static Rng substream(std::uint64_t seed, std::uint64_t stream,
                       std::uint64_t index) {
    return Rng(seed, stream, index);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform draw strictly inside (0, 1).  The half-ulp offset keeps the
  /// endpoints unreachable, so log(u) and u^(1/theta) are always finite.
  double uniform01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Exponential with the given rate (mean 1/rate).
  double exponential(double rate);

  /// Exact Poisson draw: exponential race for small means, Hormann's PTRS
  /// transformed rejection for large ones.
  std::uint64_t poisson(double mean);

 private:
  void reseed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
};

/// Substream tags used by the process-level samplers (fixed so that a run is
/// reproducible from the master seed alone).
enum class StreamTag : std::uint64_t {
  kDickman = 1,
  kLargeJumps = 2,
  kStudy = 3,
};

}  // namespace gmgd
