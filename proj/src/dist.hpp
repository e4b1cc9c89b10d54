#pragma once

namespace tc {

/// Regularized lower incomplete gamma P(a, x); series expansion for
/// x < a + 1, continued fraction otherwise. Absolute error < 1e-10.
double gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double gamma_q(double a, double x);

/// Upper tail of the chi-square distribution with `dof` degrees of freedom.
double chi2_sf(double x, double dof);

/// Regularized incomplete beta I_x(a, b) by continued fraction.
double incomplete_beta(double a, double b, double x);

/// F distribution with (d1, d2) degrees of freedom.
double f_cdf(double x, double d1, double d2);
double f_sf(double x, double d1, double d2);

/// Standard normal CDF via erfc.
double normal_cdf(double z);

/// Rational-approximation inverse of the standard normal CDF
/// (absolute error < 4.5e-4); exact 0 at p = 0.5, mirrored for p > 0.5.
double inverse_normal_cdf(double p);

}  // namespace tc
