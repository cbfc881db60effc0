#include "gmgd/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace gmgd {

namespace {

constexpr std::size_t kMinKsPoints = 100;

// Stephens' effective-n correction maps the finite-sample statistic onto the
// asymptotic Kolmogorov distribution.
double ks_p_value(double statistic, double effective_n) {
  const double root = std::sqrt(effective_n);
  return kolmogorov_q((root + 0.12 + 0.11 / root) * statistic);
}

}  // namespace

double kolmogorov_q(double t) {
  if (t <= 0.0) {
    return 1.0;
  }
  if (t < 0.05) {
    return 1.0;  // series converges slowly here and Q is 1 to ~1e-200
  }
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * t * t);
    sum += sign * term;
    sign = -sign;
    if (term < 1e-18) {
      break;
    }
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_test(std::span<const double> sample,
                 const std::function<double(double)>& cdf) {
  if (sample.size() < kMinKsPoints) {
    throw std::invalid_argument("ks_test: need at least 100 points");
  }
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double statistic = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    const double upper = (static_cast<double>(i) + 1.0) / n - f;
    const double lower = f - static_cast<double>(i) / n;
    statistic = std::max({statistic, upper, lower});
  }
  return KsResult{statistic, ks_p_value(statistic, n)};
}

KsResult ks_test_two_sample(std::span<const double> a,
                            std::span<const double> b) {
  if (a.size() < kMinKsPoints || b.size() < kMinKsPoints) {
    throw std::invalid_argument("ks_test_two_sample: need at least 100 points");
  }
  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const double na = static_cast<double>(sa.size());
  const double nb = static_cast<double>(sb.size());
  double statistic = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < sa.size() && j < sb.size()) {
    const double x = std::min(sa[i], sb[j]);
    while (i < sa.size() && sa[i] <= x) ++i;
    while (j < sb.size() && sb[j] <= x) ++j;
    statistic = std::max(statistic, std::abs(static_cast<double>(i) / na -
                                             static_cast<double>(j) / nb));
  }
  const double effective_n = na * nb / (na + nb);
  return KsResult{statistic, ks_p_value(statistic, effective_n)};
}

ChiSquareResult chi_square_gof(std::span<const std::uint64_t> counts,
                               std::span<const double> probabilities) {
  if (counts.size() != probabilities.size() || counts.size() < 2) {
    throw std::invalid_argument("chi_square_gof: need >= 2 matching categories");
  }
  double total = 0.0;
  for (auto c : counts) total += static_cast<double>(c);
  if (total <= 0.0) {
    throw std::invalid_argument("chi_square_gof: empty sample");
  }
  double statistic = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double expected = total * probabilities[i];
    if (!(expected > 0.0)) {
      throw std::invalid_argument("chi_square_gof: zero expected count");
    }
    const double diff = static_cast<double>(counts[i]) - expected;
    statistic += diff * diff / expected;
  }
  const double df = static_cast<double>(counts.size() - 1);
  return ChiSquareResult{statistic, regularized_gamma_q(0.5 * df, 0.5 * statistic)};
}

namespace {

// Series expansion of P(a, x), effective for x < a + 1.
double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  double ap = a;
  for (int n = 0; n < 500; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-16) {
      break;
    }
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a, x), effective for x >= a + 1 (modified Lentz).
double gamma_q_fraction(double a, double x) {
  constexpr double kTiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) {
      break;
    }
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double regularized_gamma_p(double a, double x) {
  if (!(a > 0.0) || x < 0.0) {
    throw std::domain_error("regularized_gamma_p: need a > 0, x >= 0");
  }
  if (x == 0.0) {
    return 0.0;
  }
  return x < a + 1.0 ? gamma_p_series(a, x) : 1.0 - gamma_q_fraction(a, x);
}

double regularized_gamma_q(double a, double x) {
  if (!(a > 0.0) || x < 0.0) {
    throw std::domain_error("regularized_gamma_q: need a > 0, x >= 0");
  }
  if (x == 0.0) {
    return 1.0;
  }
  return x < a + 1.0 ? 1.0 - gamma_p_series(a, x) : gamma_q_fraction(a, x);
}

}  // namespace gmgd
