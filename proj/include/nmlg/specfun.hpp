#pragma once

namespace nmlg::specfun {

// ln Gamma(x) for x > 0. Throws std::domain_error otherwise.
double log_gamma(double x);

// Lower regularized incomplete gamma P(a, x) for a > 0, x >= 0.
// Series expansion for x < a + 1, continued fraction for the complement otherwise.
double regularized_gamma_p(double a, double x);

// Upper complement Q(a, x) = 1 - P(a, x).
double regularized_gamma_q(double a, double x);

// Error function; erf(x) = sign(x) * P(1/2, x^2).
double erf(double x);

}  // namespace nmlg::specfun
