#include "gmgd/special_functions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gmgd {

namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

// Gamma(0, x) for x in (0, 1): -gamma - ln x + sum_{k>=1} (-1)^{k+1} x^k/(k k!).
// The series is alternating with rapidly shrinking terms, so it converges to
// full double precision in at most ~25 terms on this range.
double e1_series(double x) {
  double sum = 0.0;
  double term = 1.0;
  for (int k = 1; k <= 64; ++k) {
    term *= -x / static_cast<double>(k);
    double contribution = -term / static_cast<double>(k);
    sum += contribution;
    if (std::abs(contribution) < std::numeric_limits<double>::epsilon() *
                                     (std::abs(sum) + 1.0)) {
      break;
    }
  }
  return -kEulerGamma - std::log(x) + sum;
}

// Gamma(0, x) for x >= 1 via the standard Lentz-evaluated continued fraction
// e^-x / (x + 1 - 1/(x + 3 - 4/(x + 5 - 9/(...)))).
double e1_continued_fraction(double x) {
  constexpr double kTiny = 1e-300;
  constexpr double kEps = 1e-16;
  double b = x + 1.0;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 200; ++i) {
    const double a = -static_cast<double>(i) * static_cast<double>(i);
    b += 2.0;
    d = a * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + a / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) {
      break;
    }
  }
  return h * std::exp(-x);
}

}  // namespace

double upper_gamma_zero(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::domain_error("upper_gamma_zero: argument must be finite and positive");
  }
  return x < 1.0 ? e1_series(x) : e1_continued_fraction(x);
}

double ell(double u, double p) {
  if (!(u > 0.0) || !std::isfinite(u)) {
    throw std::domain_error("ell: u must be finite and positive");
  }
  if (!(p > 0.0) || !std::isfinite(p)) {
    throw std::domain_error("ell: p must be finite and positive");
  }
  return upper_gamma_zero(std::pow(u, p)) / p;
}

}  // namespace gmgd
