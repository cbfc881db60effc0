#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gmgd/path.hpp"
#include "gmgd/rng.hpp"
#include "gmgd/spectral.hpp"

namespace gmgd {

/// One support point of a finite discrete Thorin (mixing) measure:
/// location v > 0 with probability weight q > 0.
struct ThorinAtom {
  double location = 1.0;
  double weight = 1.0;
};

/// Finite discrete probability measure on (0, inf); weights sum to 1.
using ThorinMeasure = std::vector<ThorinAtom>;

/// Full parameterization of a general multivariate gamma law: tempering
/// index p, drift gamma, spectral measure sigma, and one Thorin measure Q_s
/// per spectral atom (the radial density is q(r^p, s) r^-1 with
/// q(y, s) = sum_j q_j exp(-y v_j)).
struct GmgdSpec {
  std::size_t dimension = 2;
  double p = 1.0;
  Vec gamma;
  SpectralMeasure spectral = SpectralMeasure::zero(2);
  std::vector<ThorinMeasure> thorin;  // aligned with spectral atoms

  /// Throws std::invalid_argument on inconsistent dimensions, p <= 0, or a
  /// Thorin row that is not a probability measure on (0, inf) (weights must
  /// sum to 1 within 1e-12).
  void validate() const;

  /// Bivariate study family: uniform_circle(n) spectral measure, p = 1,
  /// Q_s = delta_1, zero drift.
  static GmgdSpec paper_study(std::size_t n = 30);

  std::string to_json_string(int indent = -1) const;
  static GmgdSpec from_json_string(const std::string& text);
};

/// Default rejection-sampler tuning parameter beta.
inline constexpr double kDefaultBeta = 0.5;

/// Rejection-sampling diagnostics; accepts/proposals is the empirical
/// acceptance rate.
struct RejectionStats {
  std::uint64_t proposals = 0;
  std::uint64_t accepts = 0;

  double acceptance_rate() const {
    return proposals == 0 ? 0.0
                          : static_cast<double>(accepts) /
                                static_cast<double>(proposals);
  }
};

// --- Radial law G_R(.; a) and its rejection machinery -----------------------

/// Tail constant k_eps(s) = sum_j q_j * ell(eps * v_j^(1/p), p) for one
/// Thorin row.
double k_epsilon(const ThorinMeasure& thorin, double p, double epsilon);

/// Density g_R(r; a) = r^-1 e^-(r^p) / ell(a) on [a, inf).
double radial_density(double r, double a, double p);

/// Proposal density h_1(x; a, p) = p x^(p-1) e^(a^p - x^p) on [a, inf).
double proposal_density_h1(double x, double a, double p);

/// Proposal density h_2(x; a, p, beta) =
///   beta * x^-1/log(1/a) on [a, 1)  +  (1-beta) p x^(p-1) e^(1-x^p) on [1, inf).
double proposal_density_h2(double x, double a, double p, double beta);

/// Envelope constants: g_R <= C1 h_1 for a >= 1 and g_R <= C2 h_2 for
/// a in (0,1).  The per-round acceptance rates of the samplers below are
/// exactly 1/C1 and 1/C2.
double envelope_c1(double a, double p);
double envelope_c2(double a, double p, double beta);

/// Quantile of h_1: (a^p - log(1-q))^(1/p) for q in [0, 1).
double quantile_h1(double q, double a, double p);

/// Deterministic map sending u ~ uniform(0,1) to a draw from h_2:
/// a^(1 - u/beta) for u <= beta, else (1 - log(1-u) + log(1-beta))^(1/p).
double h2_transform(double u, double a, double p, double beta);

/// Draw from h_2 (requires a in (0,1), beta in (0,1)).
double sample_h2(double a, double p, double beta, Rng& rng);

/// Acceptance function phi_2(x) = g_R(x) / (C2 h_2(x)) in (0, 1] for x >= a.
double phi2(double x, double a, double p, double beta);

/// Exact draw from G_R(.; a).  a >= 1 uses the h_1 proposal with the accept
/// test on the p-power scale (X = a^p - log U, accept when U' <= 1/X);
/// a in (0,1) uses the h_2 mixture proposal with phi_2.  The returned value
/// is always >= a.  The rejection loop is unbounded; its acceptance
/// probability is bounded below by 1/C1 resp. 1/C2 > 0.
double sample_radial(double a, double p, double beta, Rng& rng,
                     RejectionStats* stats = nullptr);

/// Runs exactly `rounds` proposal rounds and returns the fraction accepted
/// (drives the acceptance diagnostics in the CLI and tests).
double measure_acceptance_rate(double a, double p, double beta,
                               std::uint64_t rounds, Rng& rng);

// --- The large-jump law nu~^eps_p and its sampler ---------------------------

/// Cached sampling tables for the normalized large-jump law at truncation
/// level eps: total rate lambda^eps, tilted spherical law sigma_p, and the
/// per-atom mixing laws G_V.  Immutable after build; shareable.
class LargeJumpLaw {
 public:
  /// Builds lambda^eps = sum_i w_i k_eps(s_i), sigma_p(s_i) proportional to
  /// w_i k_eps(s_i), and G_V(v_j; s_i) proportional to q_ij ell(eps v_j^(1/p)).
  /// G_V weights below 1e-300 are dropped and each row renormalized.
  /// Throws std::invalid_argument for eps <= 0 or a zero spectral measure.
  LargeJumpLaw(GmgdSpec spec, double epsilon);

  const GmgdSpec& spec() const { return spec_; }
  double epsilon() const { return epsilon_; }
  double lambda_eps() const { return lambda_eps_; }
  const std::vector<double>& sigma_p_weights() const { return sigma_p_; }
  const std::vector<std::vector<double>>& gv_weights() const { return gv_; }

  std::size_t sample_direction_index(Rng& rng) const;
  double sample_mixing_value(std::size_t atom, Rng& rng) const;

  /// One draw W = R V^(-1/p) S from nu~^eps_p: S ~ sigma_p, V ~ G_V(.; S),
  /// R ~ G_R(.; eps V^(1/p)).  |W| > eps always and W/|W| is an atom.
  Vec sample_jump(double beta, Rng& rng, RejectionStats* stats = nullptr) const;

  /// Compound Poisson path on [0, horizon]: N ~ Pois(horizon * lambda^eps)
  /// jumps at times horizon*U_i, zero drift, jumps sorted by time.
  PathSkeleton sample_path(double horizon, double beta, Rng& rng,
                           RejectionStats* stats = nullptr) const;

 private:
  GmgdSpec spec_;
  double epsilon_;
  double lambda_eps_;
  std::vector<double> sigma_p_;             // probabilities per atom
  std::vector<double> sigma_p_cumulative_;
  std::vector<std::vector<double>> gv_;     // per atom, aligned with thorin rows
  std::vector<std::vector<double>> gv_cumulative_;
};

inline LargeJumpLaw build_large_jump_law(GmgdSpec spec, double epsilon) {
  return LargeJumpLaw(std::move(spec), epsilon);
}

/// Visits the jumps of a compound Poisson path without building a skeleton:
/// visit(time, jump_radius_scale, atom) where the jump vector is
/// jump_radius_scale * atom direction.  Same draw order as sample_path.
template <class Visitor>
void for_each_large_jump(const LargeJumpLaw& law, double horizon, double beta,
                         Rng& rng, Visitor&& visit,
                         RejectionStats* stats = nullptr) {
  if (!(horizon > 0.0)) {
    throw std::invalid_argument("for_each_large_jump: horizon must be positive");
  }
  const std::uint64_t count = rng.poisson(horizon * law.lambda_eps());
  const double inv_p = 1.0 / law.spec().p;
  for (std::uint64_t i = 0; i < count; ++i) {
    const double time = horizon * rng.uniform01();
    const std::size_t atom = law.sample_direction_index(rng);
    const double v = law.sample_mixing_value(atom, rng);
    const double a = law.epsilon() * std::pow(v, inv_p);
    const double r = sample_radial(a, law.spec().p, beta, rng, stats);
    visit(time, r * std::pow(v, -inv_p), atom);
  }
}

}  // namespace gmgd
