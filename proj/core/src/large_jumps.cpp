#include "gmgd/large_jumps.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

#include "gmgd/special_functions.hpp"

namespace gmgd {

namespace {

constexpr double kThorinWeightSumTolerance = 1e-12;
constexpr double kWeightUnderflowFloor = 1e-300;

void check_beta(double beta) {
  if (!(beta > 0.0) || !(beta < 1.0)) {
    throw std::domain_error("beta must lie in (0, 1)");
  }
}

}  // namespace

void GmgdSpec::validate() const {
  if (dimension == 0) {
    throw std::invalid_argument("GmgdSpec: dimension must be >= 1");
  }
  if (!(p > 0.0) || !std::isfinite(p)) {
    throw std::invalid_argument("GmgdSpec: p must be finite and positive");
  }
  if (gamma.size() != dimension) {
    throw std::invalid_argument("GmgdSpec: drift dimension mismatch");
  }
  if (spectral.dimension() != dimension) {
    throw std::invalid_argument("GmgdSpec: spectral measure dimension mismatch");
  }
  if (thorin.size() != spectral.atom_count()) {
    throw std::invalid_argument(
        "GmgdSpec: need exactly one Thorin measure per spectral atom");
  }
  for (const auto& row : thorin) {
    if (row.empty()) {
      throw std::invalid_argument("GmgdSpec: empty Thorin measure");
    }
    double sum = 0.0;
    for (const auto& atom : row) {
      if (!(atom.location > 0.0) || !std::isfinite(atom.location)) {
        throw std::invalid_argument(
            "GmgdSpec: Thorin support points must be finite and positive");
      }
      if (!(atom.weight > 0.0) || !std::isfinite(atom.weight)) {
        throw std::invalid_argument(
            "GmgdSpec: Thorin weights must be finite and positive");
      }
      sum += atom.weight;
    }
    if (std::abs(sum - 1.0) > kThorinWeightSumTolerance) {
      throw std::invalid_argument(
          "GmgdSpec: Thorin weights must sum to 1 within 1e-12");
    }
  }
}

GmgdSpec GmgdSpec::paper_study(std::size_t n) {
  GmgdSpec spec;
  spec.dimension = 2;
  spec.p = 1.0;
  spec.gamma = Vec{0.0, 0.0};
  spec.spectral = SpectralMeasure::uniform_circle(n);
  spec.thorin.assign(n, ThorinMeasure{ThorinAtom{1.0, 1.0}});
  spec.validate();
  return spec;
}

std::string GmgdSpec::to_json_string(int indent) const {
  nlohmann::json j;
  j["d"] = dimension;
  j["p"] = p;
  j["gamma"] = gamma;
  j["spectral"] = nlohmann::json::parse(spectral.to_json_string());
  auto& rows = j["thorin"] = nlohmann::json::array();
  for (const auto& row : thorin) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& atom : row) {
      r.push_back({atom.location, atom.weight});
    }
    rows.push_back(std::move(r));
  }
  return j.dump(indent);
}

GmgdSpec GmgdSpec::from_json_string(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  GmgdSpec spec;
  spec.dimension = j.at("d").get<std::size_t>();
  spec.p = j.at("p").get<double>();
  spec.gamma = j.at("gamma").get<Vec>();
  spec.spectral = SpectralMeasure::from_json_string(j.at("spectral").dump());
  for (const auto& row : j.at("thorin")) {
    ThorinMeasure measure;
    for (const auto& atom : row) {
      measure.push_back(
          ThorinAtom{atom.at(0).get<double>(), atom.at(1).get<double>()});
    }
    spec.thorin.push_back(std::move(measure));
  }
  spec.validate();
  return spec;
}

double k_epsilon(const ThorinMeasure& thorin, double p, double epsilon) {
  if (!(epsilon > 0.0)) {
    throw std::domain_error("k_epsilon: epsilon must be positive");
  }
  double sum = 0.0;
  for (const auto& atom : thorin) {
    sum += atom.weight * ell(epsilon * std::pow(atom.location, 1.0 / p), p);
  }
  return sum;
}

double radial_density(double r, double a, double p) {
  if (!(a > 0.0)) {
    throw std::domain_error("radial_density: a must be positive");
  }
  if (r < a) {
    return 0.0;
  }
  return std::exp(-std::pow(r, p)) / (r * ell(a, p));
}

double proposal_density_h1(double x, double a, double p) {
  if (x < a) {
    return 0.0;
  }
  return p * std::pow(x, p - 1.0) * std::exp(std::pow(a, p) - std::pow(x, p));
}

double proposal_density_h2(double x, double a, double p, double beta) {
  if (!(a > 0.0) || !(a < 1.0)) {
    throw std::domain_error("proposal_density_h2: a must lie in (0, 1)");
  }
  check_beta(beta);
  if (x < a) {
    return 0.0;
  }
  if (x < 1.0) {
    return beta / (x * std::log(1.0 / a));
  }
  return (1.0 - beta) * p * std::pow(x, p - 1.0) * std::exp(1.0 - std::pow(x, p));
}

double envelope_c1(double a, double p) {
  if (!(a >= 1.0)) {
    throw std::domain_error("envelope_c1: requires a >= 1");
  }
  return 1.0 / (std::exp(std::pow(a, p)) * p * ell(a, p));
}

double envelope_c2(double a, double p, double beta) {
  if (!(a > 0.0) || !(a < 1.0)) {
    throw std::domain_error("envelope_c2: requires a in (0, 1)");
  }
  check_beta(beta);
  const double branch_max = std::max(1.0 / (std::numbers::e * p * (1.0 - beta)),
                                     std::log(1.0 / a) / beta);
  return branch_max / ell(a, p);
}

double quantile_h1(double q, double a, double p) {
  if (!(a > 0.0)) {
    throw std::domain_error("quantile_h1: a must be positive");
  }
  if (!(q >= 0.0) || !(q < 1.0)) {
    throw std::domain_error("quantile_h1: q must lie in [0, 1)");
  }
  return std::pow(std::pow(a, p) - std::log1p(-q), 1.0 / p);
}

double h2_transform(double u, double a, double p, double beta) {
  if (u <= beta) {
    return std::pow(a, 1.0 - u / beta);
  }
  return std::pow(1.0 - std::log1p(-u) + std::log1p(-beta), 1.0 / p);
}

double sample_h2(double a, double p, double beta, Rng& rng) {
  if (!(a > 0.0) || !(a < 1.0)) {
    throw std::domain_error("sample_h2: a must lie in (0, 1)");
  }
  check_beta(beta);
  return h2_transform(rng.uniform01(), a, p, beta);
}

double phi2(double x, double a, double p, double beta) {
  if (!(a > 0.0) || !(a < 1.0)) {
    throw std::domain_error("phi2: a must lie in (0, 1)");
  }
  check_beta(beta);
  if (x < a) {
    throw std::domain_error("phi2: x must be >= a");
  }
  const double branch_max = std::max(1.0 / (std::numbers::e * p * (1.0 - beta)),
                                     std::log(1.0 / a) / beta);
  double branch;
  if (x < 1.0) {
    branch = beta * std::exp(std::pow(x, p)) / std::log(1.0 / a);
  } else {
    branch = (1.0 - beta) * std::numbers::e * p * std::pow(x, p);
  }
  return 1.0 / (branch_max * branch);
}

double sample_radial(double a, double p, double beta, Rng& rng,
                     RejectionStats* stats) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw std::domain_error("sample_radial: a must be finite and positive");
  }
  if (!(p > 0.0) || !std::isfinite(p)) {
    throw std::domain_error("sample_radial: p must be finite and positive");
  }
  if (a >= 1.0) {
    // Accept test on the p-power scale: X = a^p - log U ~ h_1 in x^p
    // coordinates and phi_1(X) = 1/X.
    const double a_pow = std::pow(a, p);
    for (;;) {
      const double x = a_pow - std::log(rng.uniform01());
      const double u = rng.uniform01();
      if (stats != nullptr) ++stats->proposals;
      if (u <= 1.0 / x) {
        if (stats != nullptr) ++stats->accepts;
        return std::pow(x, 1.0 / p);
      }
    }
  }
  check_beta(beta);
  for (;;) {
    const double x = h2_transform(rng.uniform01(), a, p, beta);
    const double u = rng.uniform01();
    if (stats != nullptr) ++stats->proposals;
    if (u <= phi2(x, a, p, beta)) {
      if (stats != nullptr) ++stats->accepts;
      return x;
    }
  }
}

double measure_acceptance_rate(double a, double p, double beta,
                               std::uint64_t rounds, Rng& rng) {
  if (rounds == 0) {
    throw std::invalid_argument("measure_acceptance_rate: rounds must be >= 1");
  }
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw std::domain_error("measure_acceptance_rate: a must be positive");
  }
  std::uint64_t accepted = 0;
  if (a >= 1.0) {
    const double a_pow = std::pow(a, p);
    for (std::uint64_t i = 0; i < rounds; ++i) {
      const double x = a_pow - std::log(rng.uniform01());
      if (rng.uniform01() <= 1.0 / x) ++accepted;
    }
  } else {
    check_beta(beta);
    for (std::uint64_t i = 0; i < rounds; ++i) {
      const double x = h2_transform(rng.uniform01(), a, p, beta);
      if (rng.uniform01() <= phi2(x, a, p, beta)) ++accepted;
    }
  }
  return static_cast<double>(accepted) / static_cast<double>(rounds);
}

LargeJumpLaw::LargeJumpLaw(GmgdSpec spec, double epsilon)
    : spec_(std::move(spec)), epsilon_(epsilon) {
  spec_.validate();
  if (!(epsilon_ > 0.0) || !std::isfinite(epsilon_)) {
    throw std::invalid_argument("LargeJumpLaw: epsilon must be finite and positive");
  }
  if (spec_.spectral.is_zero()) {
    throw std::invalid_argument(
        "LargeJumpLaw: the zero spectral measure has no large-jump law");
  }
  const std::size_t atom_count = spec_.spectral.atom_count();
  std::vector<double> k_values(atom_count);
  lambda_eps_ = 0.0;
  for (std::size_t i = 0; i < atom_count; ++i) {
    k_values[i] = k_epsilon(spec_.thorin[i], spec_.p, epsilon_);
    lambda_eps_ += spec_.spectral.weight(i) * k_values[i];
  }
  if (!(lambda_eps_ > 0.0)) {
    throw std::invalid_argument(
        "LargeJumpLaw: lambda^eps underflowed to zero; epsilon is too large");
  }

  sigma_p_.resize(atom_count);
  sigma_p_cumulative_.resize(atom_count);
  double acc = 0.0;
  for (std::size_t i = 0; i < atom_count; ++i) {
    sigma_p_[i] = spec_.spectral.weight(i) * k_values[i] / lambda_eps_;
    acc += sigma_p_[i];
    sigma_p_cumulative_[i] = acc;
  }
  sigma_p_cumulative_.back() = 1.0;

  gv_.resize(atom_count);
  gv_cumulative_.resize(atom_count);
  for (std::size_t i = 0; i < atom_count; ++i) {
    const auto& row = spec_.thorin[i];
    auto& weights = gv_[i];
    weights.assign(row.size(), 0.0);
    double row_sum = 0.0;
    for (std::size_t j = 0; j < row.size(); ++j) {
      const double w =
          row[j].weight *
          ell(epsilon_ * std::pow(row[j].location, 1.0 / spec_.p), spec_.p);
      // Drop underflowed weights so the row stays a probability vector.
      weights[j] = w < kWeightUnderflowFloor ? 0.0 : w;
      row_sum += weights[j];
    }
    if (!(row_sum > 0.0)) {
      throw std::invalid_argument(
          "LargeJumpLaw: every G_V weight underflowed for an atom");
    }
    auto& cumulative = gv_cumulative_[i];
    cumulative.assign(row.size(), 0.0);
    double racc = 0.0;
    for (std::size_t j = 0; j < row.size(); ++j) {
      weights[j] /= row_sum;
      racc += weights[j];
      cumulative[j] = racc;
    }
    cumulative.back() = 1.0;
  }
}

std::size_t LargeJumpLaw::sample_direction_index(Rng& rng) const {
  const double u = rng.uniform01();
  const auto it = std::lower_bound(sigma_p_cumulative_.begin(),
                                   sigma_p_cumulative_.end(), u);
  return it == sigma_p_cumulative_.end()
             ? sigma_p_cumulative_.size() - 1
             : static_cast<std::size_t>(it - sigma_p_cumulative_.begin());
}

double LargeJumpLaw::sample_mixing_value(std::size_t atom, Rng& rng) const {
  const auto& cumulative = gv_cumulative_[atom];
  const double u = rng.uniform01();
  const auto it = std::lower_bound(cumulative.begin(), cumulative.end(), u);
  const std::size_t j = it == cumulative.end()
                            ? cumulative.size() - 1
                            : static_cast<std::size_t>(it - cumulative.begin());
  return spec_.thorin[atom][j].location;
}

Vec LargeJumpLaw::sample_jump(double beta, Rng& rng,
                              RejectionStats* stats) const {
  const double inv_p = 1.0 / spec_.p;
  const std::size_t atom = sample_direction_index(rng);
  const double v = sample_mixing_value(atom, rng);
  const double a = epsilon_ * std::pow(v, inv_p);
  const double r = sample_radial(a, spec_.p, beta, rng, stats);
  return scaled(spec_.spectral.atom(atom), r * std::pow(v, -inv_p));
}

PathSkeleton LargeJumpLaw::sample_path(double horizon, double beta, Rng& rng,
                                       RejectionStats* stats) const {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw std::invalid_argument("LargeJumpLaw::sample_path: horizon must be positive");
  }
  PathSkeleton path;
  path.horizon = horizon;
  path.drift.assign(spec_.dimension, 0.0);
  for_each_large_jump(
      *this, horizon, beta, rng,
      [&](double time, double scale, std::size_t atom) {
        path.jumps.push_back(
            Jump{time, scaled(spec_.spectral.atom(atom), scale)});
      },
      stats);
  std::stable_sort(
      path.jumps.begin(), path.jumps.end(),
      [](const Jump& a, const Jump& b) { return a.time < b.time; });
  return path;
}

}  // namespace gmgd
