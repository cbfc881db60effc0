#pragma once

#include <cstdint>

#include "gmgd/dickman.hpp"
#include "gmgd/large_jumps.hpp"
#include "gmgd/path.hpp"

namespace gmgd {

/// Knobs for the approximate GMGD path sampler: small-jump threshold eps,
/// horizon T, shot-noise truncation, rejection tuning beta, and the master
/// seed from which all substreams derive.
struct SimulationConfig {
  double epsilon = 0.1;
  double horizon = 1.0;
  std::size_t shot_noise_truncation = kDefaultShotNoiseTruncation;
  double beta = kDefaultBeta;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Which part of the decomposition X ~ eps*Y^1 + X~^eps + gamma* to sample.
enum class PathComponent {
  kFull,        // drift + scaled Dickman + compound Poisson large jumps
  kLargeJumps,  // compound Poisson part only (drift zero)
  kDickman,     // scaled Dickman part only (drift zero)
};

/// Approximate GMGD path on [0, T] for one replication: the Dickman and
/// large-jump samplers consume independent substreams derived from
/// (cfg.seed, replication), so paths are reproducible per (seed, replication)
/// regardless of execution order.  Jump lists are merged time-sorted with
/// Dickman jumps first on ties; every Dickman jump has magnitude < eps and
/// every large jump magnitude > eps.
PathSkeleton sample_process_path(const GmgdSpec& spec,
                                 const SimulationConfig& cfg,
                                 std::uint64_t replication = 0,
                                 PathComponent component = PathComponent::kFull);

}  // namespace gmgd
