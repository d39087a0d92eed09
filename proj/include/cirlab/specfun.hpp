#pragma once

// Scalar special functions used throughout the library. Everything here is a
// pure function of its arguments; anything that can overflow for large shape
// or degrees-of-freedom parameters is evaluated in log space.

namespace cirlab::specfun {

/// ln Gamma(x) for x > 0. Throws std::domain_error for x <= 0.
double ln_gamma(double x);

/// Regularized lower incomplete gamma P(a, x) = gamma(a,x)/Gamma(a).
/// Requires a > 0 and x >= 0; monotone nondecreasing in x with range [0, 1).
double reg_lower_inc_gamma(double a, double x);

/// Complement Q(a, x) = 1 - P(a, x), computed without cancellation.
double reg_upper_inc_gamma(double a, double x);

double erf(double x);
double erfc(double x);

/// Inverse of erf on (-1, 1). Throws std::domain_error for |y| >= 1.
double erf_inv(double y);

/// log of the Poisson(mean) pmf at k: k*ln(mean) - mean - ln Gamma(k+1).
/// Accepts real k >= 0 so the same kernel serves gamma-series terms.
/// Stable for k and mean up to ~1e9 (Stirling path once k >= 30).
double log_poisson_pmf(double k, double mean);

/// E|G|^p for a standard Gaussian G: 2^(p/2) Gamma((p+1)/2) / sqrt(pi).
double gaussian_abs_moment(double p);

namespace detail {

/// log1p(x) - x, evaluated without cancellation for small |x|.
double log1p_minus_x(double x);

/// ln Gamma(a) - [(a - 1/2) ln a - a + ln(2 pi)/2], the Stirling remainder.
/// Accurate for a >= 30.
double stirling_remainder(double a);

/// a*ln(x) - x - ln Gamma(a+1), stable for huge a (the log of the central
/// gamma/Poisson term x^a e^{-x} / Gamma(a+1)). Requires a >= 0, x > 0.
double log_gamma_term(double a, double x);

}  // namespace detail

}  // namespace cirlab::specfun
