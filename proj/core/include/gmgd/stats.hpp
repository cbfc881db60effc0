#pragma once

#include <cstdint>
#include <functional>
#include <span>

namespace gmgd {

/// Result of a Kolmogorov-Smirnov test: the statistic sup|F - G| and the
/// asymptotic p-value (with Stephens' small-sample correction).
struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;

  bool passes(double significance) const { return p_value > significance; }
};

/// One-sample KS test of a sample against a reference CDF.  Requires at
/// least 100 points (throws std::invalid_argument otherwise).
KsResult ks_test(std::span<const double> sample,
                 const std::function<double(double)>& cdf);

/// Two-sample KS test; statistic is 0 when both samples coincide.
KsResult ks_test_two_sample(std::span<const double> a,
                            std::span<const double> b);

/// Survival function of the Kolmogorov distribution,
/// Q(t) = 2 sum_{k>=1} (-1)^(k-1) exp(-2 k^2 t^2).
double kolmogorov_q(double t);

/// Chi-square goodness of fit for observed category counts against expected
/// probabilities; p-value from the regularized upper incomplete gamma.
struct ChiSquareResult {
  double statistic = 0.0;
  double p_value = 1.0;

  bool passes(double significance) const { return p_value > significance; }
};

ChiSquareResult chi_square_gof(std::span<const std::uint64_t> counts,
                               std::span<const double> probabilities);

/// Regularized incomplete gamma functions P(a,x) and Q(a,x) = 1 - P(a,x),
/// used for chi-square p-values (series / continued-fraction evaluation).
double regularized_gamma_p(double a, double x);
double regularized_gamma_q(double a, double x);

}  // namespace gmgd
