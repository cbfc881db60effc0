#pragma once

namespace gmgd {

/// Upper incomplete gamma function at zero order, Gamma(0, x) = E1(x)
/// = integral over (x, inf) of y^-1 e^-y dy, for x > 0.
///
/// Series expansion below x = 1, continued fraction above; relative error
/// is below 1e-12 across [1e-12, 50].  Underflows to 0 for very large x.
/// Throws std::domain_error for non-positive or non-finite x.
double upper_gamma_zero(double x);

/// Radial tail integral ell(u) = integral over (u, inf) of r^-1 e^-(r^p) dr
/// = Gamma(0, u^p) / p, for u > 0, p > 0.  Strictly decreasing in u.
double ell(double u, double p);

}  // namespace gmgd
