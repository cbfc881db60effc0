#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "gmgd/rng.hpp"
#include "gmgd/vec.hpp"

namespace gmgd {

/// Finite discrete spectral measure on the unit sphere S^(d-1): a list of
/// unit-vector atoms with strictly positive weights.  Immutable after
/// construction and freely shareable across threads.
///
/// The zero measure (no atoms) is a valid, explicit variant: the Dickman
/// sampler degenerates to the zero process for it, while direction sampling
/// is a domain error.
class SpectralMeasure {
 public:
  /// Validates: unit atoms (| |s|-1 | <= 1e-12), positive weights, matching
  /// sizes, pairwise-distinct atoms.  Throws std::invalid_argument.
  SpectralMeasure(std::size_t dimension, std::vector<Vec> atoms,
                  std::vector<double> weights);

  static SpectralMeasure zero(std::size_t dimension);

  /// Uniform probability measure on n evenly spaced points of the unit
  /// circle, atoms (cos(2*pi*(i-1)/n), sin(2*pi*(i-1)/n)), weights 1/n.
  static SpectralMeasure uniform_circle(std::size_t n);

  std::size_t dimension() const { return dimension_; }
  std::size_t atom_count() const { return atoms_.size(); }
  const Vec& atom(std::size_t i) const { return atoms_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }
  const std::vector<Vec>& atoms() const { return atoms_; }
  const std::vector<double>& weights() const { return weights_; }

  /// theta = sigma(S^(d-1)); 0 for the zero measure.
  double total_mass() const { return total_mass_; }
  bool is_zero() const { return atoms_.empty(); }

  /// Index of an atom drawn with probability weight/total_mass.
  /// Throws std::domain_error on the zero measure.
  std::size_t sample_atom_index(Rng& rng) const;
  const Vec& sample_direction(Rng& rng) const {
    return atoms_[sample_atom_index(rng)];
  }

  std::string to_json_string(int indent = -1) const;
  static SpectralMeasure from_json_string(const std::string& text);

 private:
  std::size_t dimension_;
  std::vector<Vec> atoms_;
  std::vector<double> weights_;
  std::vector<double> cumulative_;  // running weight sums for sampling
  double total_mass_;
};

/// Sum of weights over a subset of atom indices.  Throws on out-of-range
/// indices.
double subset_mass(const SpectralMeasure& measure,
                   std::span<const std::size_t> atom_indices);

}  // namespace gmgd
