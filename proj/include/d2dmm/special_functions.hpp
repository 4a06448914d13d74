#pragma once

// Scalar special functions used by the analytic rate/power expressions:
// gamma family, digamma, exponential integral E1, regularized incomplete
// beta.  All functions are pure, thread-safe, and validate their domains
// with std::domain_error.

namespace d2dmm {

inline constexpr double euler_gamma = 0.5772156649015328606065120900824024;

// Gamma function for s > 0.  Relative error < 1e-12 over the double range
// (overflows to +inf above s ~ 171.6).
double gamma_fn(double s);

// log Gamma for s > 0.
double log_gamma(double s);

// Lower incomplete gamma  integral_0^x t^{s-1} e^{-t} dt,  s > 0, x >= 0.
double lower_incomplete_gamma(double s, double x);

// Upper incomplete gamma  integral_x^inf t^{s-1} e^{-t} dt,  s > 0, x >= 0.
double upper_incomplete_gamma(double s, double x);

// Digamma (psi) for s > 0.  Absolute error < 1e-12.
double digamma(double s);

// Exponential integral E1(x) = integral_x^inf e^{-t}/t dt, x > 0.
// Equals the s -> 0 limit of the upper incomplete gamma.
double exp_integral_e1(double x);

// Regularized incomplete beta I_x(a, b), a > 0, b > 0, 0 <= x <= 1.
double regularized_incomplete_beta(double a, double b, double x);

}  // namespace d2dmm
