#include "gmgd/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

namespace gmgd {

namespace {

constexpr double kUnitNormTolerance = 1e-12;
constexpr double kDuplicateTolerance = 1e-12;

}  // namespace

SpectralMeasure::SpectralMeasure(std::size_t dimension, std::vector<Vec> atoms,
                                 std::vector<double> weights)
    : dimension_(dimension),
      atoms_(std::move(atoms)),
      weights_(std::move(weights)) {
  if (dimension_ == 0) {
    throw std::invalid_argument("SpectralMeasure: dimension must be >= 1");
  }
  if (atoms_.size() != weights_.size()) {
    throw std::invalid_argument(
        "SpectralMeasure: atoms and weights must have equal length");
  }
  for (const auto& atom : atoms_) {
    if (atom.size() != dimension_) {
      throw std::invalid_argument("SpectralMeasure: atom dimension mismatch");
    }
    if (std::abs(norm(atom) - 1.0) > kUnitNormTolerance) {
      throw std::invalid_argument("SpectralMeasure: atoms must be unit vectors");
    }
  }
  for (double w : weights_) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument(
          "SpectralMeasure: weights must be finite and strictly positive");
    }
  }
  // Duplicate atoms are rejected rather than merged, to surface
  // configuration errors.
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    for (std::size_t j = i + 1; j < atoms_.size(); ++j) {
      double max_diff = 0.0;
      for (std::size_t k = 0; k < dimension_; ++k) {
        max_diff = std::max(max_diff, std::abs(atoms_[i][k] - atoms_[j][k]));
      }
      if (max_diff <= kDuplicateTolerance) {
        throw std::invalid_argument("SpectralMeasure: duplicate atoms");
      }
    }
  }
  cumulative_.resize(weights_.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    acc += weights_[i];
    cumulative_[i] = acc;
  }
  total_mass_ = acc;
}

SpectralMeasure SpectralMeasure::zero(std::size_t dimension) {
  return SpectralMeasure(dimension, {}, {});
}

SpectralMeasure SpectralMeasure::uniform_circle(std::size_t n) {
  if (n == 0) {
    throw std::invalid_argument("uniform_circle: n must be >= 1");
  }
  std::vector<Vec> atoms;
  std::vector<double> weights;
  atoms.reserve(n);
  weights.reserve(n);
  const double w = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double angle =
        2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
    atoms.push_back(Vec{std::cos(angle), std::sin(angle)});
    weights.push_back(w);
  }
  return SpectralMeasure(2, std::move(atoms), std::move(weights));
}

std::size_t SpectralMeasure::sample_atom_index(Rng& rng) const {
  if (is_zero()) {
    throw std::domain_error(
        "SpectralMeasure: cannot sample a direction from the zero measure");
  }
  const double u = rng.uniform01() * total_mass_;
  const auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), u);
  if (it == cumulative_.end()) {
    return cumulative_.size() - 1;  // guards against u == total_mass rounding
  }
  return static_cast<std::size_t>(it - cumulative_.begin());
}

std::string SpectralMeasure::to_json_string(int indent) const {
  nlohmann::json j;
  j["d"] = dimension_;
  j["atoms"] = atoms_;
  j["weights"] = weights_;
  return j.dump(indent);
}

SpectralMeasure SpectralMeasure::from_json_string(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  const auto dimension = j.at("d").get<std::size_t>();
  auto atoms = j.at("atoms").get<std::vector<Vec>>();
  auto weights = j.at("weights").get<std::vector<double>>();
  return SpectralMeasure(dimension, std::move(atoms), std::move(weights));
}

double subset_mass(const SpectralMeasure& measure,
                   std::span<const std::size_t> atom_indices) {
  double mass = 0.0;
  for (std::size_t idx : atom_indices) {
    if (idx >= measure.atom_count()) {
      throw std::invalid_argument("subset_mass: atom index out of range");
    }
    mass += measure.weight(idx);
  }
  return mass;
}

}  // namespace gmgd
