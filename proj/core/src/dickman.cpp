#include "gmgd/dickman.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace gmgd {

void DickmanSpec::validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("DickmanSpec: epsilon must be finite and positive");
  }
}

namespace {

void check_path_arguments(double horizon, std::size_t truncation) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw std::invalid_argument("sample_dickman_path: horizon must be positive");
  }
  if (truncation == 0) {
    throw std::invalid_argument("sample_dickman_path: truncation must be >= 1");
  }
}

}  // namespace

PathSkeleton sample_dickman_path(const DickmanSpec& spec, double horizon,
                                 std::size_t truncation, Rng& rng) {
  check_path_arguments(horizon, truncation);
  PathSkeleton path;
  path.horizon = horizon;
  path.drift.assign(spec.spectral.dimension(), 0.0);
  path.jumps.reserve(std::min<std::size_t>(truncation, 4096));
  for_each_dickman_jump(
      spec, horizon, truncation, rng,
      [&](double time, double magnitude, std::size_t atom) {
        path.jumps.push_back(
            Jump{time, scaled(spec.spectral.atom(atom), magnitude)});
      });
  // Ties in time (measure zero, but possible as float collisions) keep
  // generation order.
  std::stable_sort(
      path.jumps.begin(), path.jumps.end(),
      [](const Jump& a, const Jump& b) { return a.time < b.time; });
  return path;
}

Vec sample_dickman_marginal(const DickmanSpec& spec, std::size_t truncation,
                            Rng& rng) {
  check_path_arguments(1.0, truncation);
  Vec value(spec.spectral.dimension(), 0.0);
  for_each_dickman_jump(spec, 1.0, truncation, rng,
                        [&](double, double magnitude, std::size_t atom) {
                          axpy(magnitude, spec.spectral.atom(atom), value);
                        });
  return value;
}

double dickman_levy_mass(const DickmanSpec& spec, double a, double b,
                         std::span<const std::size_t> atom_indices) {
  if (!(a >= 0.0) || !(b > a)) {
    throw std::invalid_argument("dickman_levy_mass: need 0 <= a < b");
  }
  const double sector_mass = subset_mass(spec.spectral, atom_indices);
  if (a >= spec.epsilon || sector_mass == 0.0) {
    return 0.0;
  }
  if (a == 0.0) {
    // The radial density r^-1 is non-integrable at the origin.
    return std::numeric_limits<double>::infinity();
  }
  const double hi = std::min(b, spec.epsilon);
  return sector_mass * (std::log(hi) - std::log(a));
}

double dickman_levy_mass(const DickmanSpec& spec, double a, double b) {
  std::vector<std::size_t> all(spec.spectral.atom_count());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return dickman_levy_mass(spec, a, b, all);
}

}  // namespace gmgd
