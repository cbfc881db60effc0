#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <utility>

#include "gmgd/path.hpp"
#include "gmgd/rng.hpp"
#include "gmgd/spectral.hpp"

namespace gmgd {

/// Parameters of a multivariate epsilon-Dickman law MD^eps(sigma): spectral
/// measure sigma plus the maximum jump magnitude epsilon.
struct DickmanSpec {
  SpectralMeasure spectral;
  double epsilon = 1.0;

  DickmanSpec(SpectralMeasure measure, double eps)
      : spectral(std::move(measure)), epsilon(eps) {
    validate();
  }
  void validate() const;
};

inline constexpr std::size_t kDefaultShotNoiseTruncation = 10000;

/// Visits the first `truncation` shot-noise jumps of the Dickman Levy
/// process on [0, horizon]: jump i occurs at time horizon*U_i with value
/// epsilon * exp(-Gamma_i/horizon) * xi_i, where Gamma_i is a running sum of
/// iid Exp(theta) variables, U_i iid uniform(0,1) and xi_i iid sigma/theta.
///
/// Output is reproducible from (seed, truncation, epsilon, horizon) alone.
/// Gamma_i is increasing, so once a magnitude underflows to zero every later
/// term is exactly zero too; the loop stops there instead of emitting no-op
/// jumps.  The zero spectral measure visits nothing.
template <class Visitor>
void for_each_dickman_jump(const DickmanSpec& spec, double horizon,
                           std::size_t truncation, Rng& rng,
                           Visitor&& visit) {
  const double theta = spec.spectral.total_mass();
  if (theta == 0.0) {
    return;
  }
  double gamma = 0.0;
  for (std::size_t i = 0; i < truncation; ++i) {
    gamma += rng.exponential(theta);
    const double exponent = -gamma / horizon;
    if (exponent < -690.0) {
      break;  // magnitude underflows from here on
    }
    const double time_fraction = rng.uniform01();
    const std::size_t atom = spec.spectral.sample_atom_index(rng);
    const double magnitude = spec.epsilon * std::exp(exponent);
    if (magnitude < 1e-300) {
      break;  // below this floor, coordinates can round to an exact zero
    }
    visit(horizon * time_fraction, magnitude, atom);
  }
}

/// Shot-noise path of the Dickman Levy process on [0, horizon], truncated at
/// `truncation` terms; zero drift, every jump magnitude strictly below
/// epsilon.  Throws std::invalid_argument for horizon <= 0 or truncation == 0.
PathSkeleton sample_dickman_path(const DickmanSpec& spec, double horizon,
                                 std::size_t truncation, Rng& rng);

/// Marginal draw from MD^eps(sigma): the shot-noise path evaluated at the
/// horizon (computed directly, without building a skeleton).
Vec sample_dickman_marginal(const DickmanSpec& spec, std::size_t truncation,
                            Rng& rng);

/// Mass of the Dickman Levy measure D^eps on the sector (a, b] x C, where C
/// is a subset of the atoms: sigma(C) * (log(min(b,eps)) - log(min(a,eps)))
/// for a < eps, and 0 for a >= eps.  For a == 0 the mass is infinite
/// (returns +inf) whenever sigma(C) > 0.  Throws for a < 0 or b <= a.
double dickman_levy_mass(const DickmanSpec& spec, double a, double b,
                         std::span<const std::size_t> atom_indices);

/// Same, with C equal to the whole atom set.
double dickman_levy_mass(const DickmanSpec& spec, double a, double b);

}  // namespace gmgd
