#include "gmgd/process.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gmgd {

void SimulationConfig::validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("SimulationConfig: epsilon must be positive");
  }
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw std::invalid_argument("SimulationConfig: horizon must be positive");
  }
  if (shot_noise_truncation == 0) {
    throw std::invalid_argument(
        "SimulationConfig: shot-noise truncation must be >= 1");
  }
  if (!(beta > 0.0) || !(beta < 1.0)) {
    throw std::invalid_argument("SimulationConfig: beta must lie in (0, 1)");
  }
}

PathSkeleton sample_process_path(const GmgdSpec& spec,
                                 const SimulationConfig& cfg,
                                 std::uint64_t replication,
                                 PathComponent component) {
  spec.validate();
  cfg.validate();

  PathSkeleton dickman_part;
  if (component != PathComponent::kLargeJumps) {
    Rng rng = Rng::substream(cfg.seed,
                             static_cast<std::uint64_t>(StreamTag::kDickman),
                             replication);
    dickman_part =
        sample_dickman_path(DickmanSpec(spec.spectral, cfg.epsilon),
                            cfg.horizon, cfg.shot_noise_truncation, rng);
  }

  PathSkeleton large_part;
  if (component != PathComponent::kDickman) {
    Rng rng = Rng::substream(cfg.seed,
                             static_cast<std::uint64_t>(StreamTag::kLargeJumps),
                             replication);
    LargeJumpLaw law(spec, cfg.epsilon);
    large_part = law.sample_path(cfg.horizon, cfg.beta, rng);
  }

  PathSkeleton path;
  path.horizon = cfg.horizon;
  path.drift = component == PathComponent::kFull ? spec.gamma
                                                 : Vec(spec.dimension, 0.0);
  path.jumps.resize(dickman_part.jumps.size() + large_part.jumps.size());
  // Dickman jumps sort before large jumps at equal timestamps.
  std::merge(dickman_part.jumps.begin(), dickman_part.jumps.end(),
             large_part.jumps.begin(), large_part.jumps.end(),
             path.jumps.begin(),
             [](const Jump& a, const Jump& b) { return a.time < b.time; });
  return path;
}

}  // namespace gmgd
