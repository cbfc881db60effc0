#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "gmgd/large_jumps.hpp"
#include "gmgd/process.hpp"
#include "gmgd/stats.hpp"

namespace gmgd {

/// Analytic first and second moments of a bivariate process at one time.
struct AnalyticMoments {
  double mean1 = 0.0;
  double mean2 = 0.0;
  double var1 = 0.0;
  double var2 = 0.0;
  double cov = 0.0;
};

/// Closed-form moments of the bivariate study family (uniform_circle(n),
/// p = 1, Q = delta_1) large-jump process at time t:
///   mean_i = t e^-eps (1/n) sum cos/sin,
///   var_i  = t (eps+1) e^-eps (1/n) sum cos^2/sin^2,
///   cov    = t (eps+1) e^-eps (1/n) sum cos*sin.
/// epsilon = 0 gives the full-process moments.
AnalyticMoments analytic_moments_study(std::size_t n, double epsilon, double t);

/// Closed-form moments of the large-jump process for any bivariate GMGD spec
/// with p = 1 (elementary integrals of the tempered radial density); again
/// epsilon = 0 gives the full process.  Throws std::domain_error for p != 1.
AnalyticMoments analytic_large_jump_moments(const GmgdSpec& spec,
                                            double epsilon, double t);

/// Which estimator the Monte Carlo study simulates.
enum class StudyTarget {
  kLargeJumpsOnly,  // compound Poisson part, scored against its own moments
  kFullProcess,     // Dickman + large jumps + drift, scored against eps = 0
};

/// Per-time entry of a moment study: analytic values, empirical estimates,
/// and the five error metrics |analytic - empirical| / t plus their
/// root-sum-square.
struct MomentRow {
  double time = 0.0;
  AnalyticMoments analytic;
  double mean1 = 0.0;
  double mean2 = 0.0;
  double var1 = 0.0;
  double var2 = 0.0;
  double cov = 0.0;
  double err_mean1 = 0.0;
  double err_mean2 = 0.0;
  double err_var1 = 0.0;
  double err_var2 = 0.0;
  double err_cov = 0.0;
  double total_error = 0.0;
};

struct MomentReport {
  std::size_t replications = 0;
  std::vector<MomentRow> rows;

  /// Row whose time matches t (within 1e-12); throws if absent.
  const MomentRow& at_time(double t) const;

  std::string to_json_string(int indent = -1) const;
  void write_csv(std::ostream& os) const;
};

/// Monte Carlo moment study over `replications` paths evaluated at the
/// sorted time grid.  Sample variances/covariances use the unbiased (N-1)
/// normalization; replications >= 2 required.  Aggregation is blockwise with
/// compensated summation, so the result is bit-identical for any thread
/// count.  Requires a bivariate spec with p = 1 (for the analytic side).
MomentReport moment_study(const GmgdSpec& spec, const SimulationConfig& cfg,
                          std::size_t replications,
                          std::span<const double> times, StudyTarget target,
                          unsigned threads = 1);

/// Paired comparison of the Dickman-augmented estimator against dropping
/// the small jumps altogether.  Both variants share the same large-jump
/// draws (common random numbers) and are scored against the full-process
/// (eps = 0) moments.
struct ComparisonStudy {
  MomentReport with_dickman;
  MomentReport drop_small_jumps;
};

ComparisonStudy moment_study_compare(const GmgdSpec& spec,
                                     const SimulationConfig& cfg,
                                     std::size_t replications,
                                     std::span<const double> times,
                                     unsigned threads = 1);

/// Default study grid: `count` evenly spaced times in (0, horizon].
std::vector<double> default_time_grid(double horizon, std::size_t count = 20);

/// One point of the small-jump convergence diagnostic.
struct ConvergencePoint {
  double epsilon = 0.0;
  double ratio = 0.0;
};

/// Checks the small-jump normalization ratio
///   (1/eps^p_test) integral_{(0,eps]C} |x|^p_test nu(dx)  /  (sigma(C)/p_test)
/// for a decreasing list of eps values; the ratios approach 1 monotonically
/// for GMGD laws.  Closed form when p_test equals the spec's p, numeric
/// quadrature otherwise.  An empty sector yields ratio 1 by convention.
std::vector<ConvergencePoint> convergence_check(
    const GmgdSpec& spec, std::span<const std::size_t> sector, double p_test,
    std::span<const double> epsilons);

void write_convergence_csv(std::span<const ConvergencePoint> points,
                           std::ostream& os);

}  // namespace gmgd
