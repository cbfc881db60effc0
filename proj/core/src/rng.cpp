#include "gmgd/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace gmgd {

namespace {

// splitmix64 finalizer (Vigna); also used as the avalanche step when folding
// stream/index keys into the seed.
std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

void Rng::reseed(std::uint64_t seed, std::uint64_t stream,
                 std::uint64_t index) {
  std::uint64_t key = mix64(seed);
  key = mix64(key ^ stream);
  key = mix64(key ^ index);
  // Expand the key into the 256-bit state with a splitmix64 sequence.  The
  // state cannot be all zero because mix64 is a bijection chain seeded with
  // distinct increments.
  std::uint64_t z = key;
  for (auto& word : state_) {
    z += 0x9e3779b97f4a7c15ULL;
    std::uint64_t w = z;
    w = (w ^ (w >> 30)) * 0xbf58476d1ce4e5b9ULL;
    w = (w ^ (w >> 27)) * 0x94d049bb133111ebULL;
    word = w ^ (w >> 31);
  }
  if (state_[0] == 0 && state_[1] == 0 && state_[2] == 0 && state_[3] == 0) {
    state_[0] = 0x853c49e6748fea9bULL;
  }
}

double Rng::exponential(double rate) {
  if (!(rate > 0.0)) {
    throw std::domain_error("Rng::exponential: rate must be positive");
  }
  return -std::log(uniform01()) / rate;
}

std::uint64_t Rng::poisson(double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw std::domain_error("Rng::poisson: mean must be finite and >= 0");
  }
  if (mean == 0.0) {
    return 0;
  }
  if (mean < 30.0) {
    // Count arrivals of a unit-rate renewal process before `mean`.
    std::uint64_t count = 0;
    double acc = exponential(1.0);
    while (acc <= mean) {
      ++count;
      acc += exponential(1.0);
    }
    return count;
  }
  // PTRS transformed rejection (Hormann 1993), exact for mean >= ~10.
  const double b = 0.931 + 2.53 * std::sqrt(mean);
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  const double log_mean = std::log(mean);
  for (;;) {
    double u = uniform01() - 0.5;
    double v = uniform01();
    double us = 0.5 - std::abs(u);
    double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= v_r) {
      return static_cast<std::uint64_t>(k);
    }
    if (k < 0.0 || (us < 0.013 && v > us)) {
      continue;
    }
    if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
        k * log_mean - mean - std::lgamma(k + 1.0)) {
      return static_cast<std::uint64_t>(k);
    }
  }
}

}  // namespace gmgd
