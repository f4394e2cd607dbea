#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "nmlg/gauss.hpp"

namespace nmlg {

enum class Method { exact, approx, quadrature, monte_carlo };

std::string_view method_name(Method m);

// Integral mass split by where the clipped sample mean lands:
// r1: mean below the box, r2: mean inside, r3: mean above.
struct RegionMasses {
  double r1;
  double r2;
  double r3;
};

struct AttenuationResult {
  double log_value;  // always finite for exact methods, even when value overflows
  double value;      // +inf marks overflow of the linear-scale value
  Method method;
  std::optional<RegionMasses> regions;
  std::optional<double> std_error;  // stochastic methods only
};

// Additive pieces of the attenuation (value = joint + mean + var + 1 for the
// exact form; the approximate form drops the constant).
//   joint_term: mean and variance both free, scales like alpha*n*(1/s_min - 1/s_max)
//   mean_term:  mean free at a clipped variance, scales like alpha*sqrt(n)
//   var_term:   variance free, scales like sqrt(n)*log(s_max/s_min)
struct AttenuationTerms {
  double joint_term;
  double mean_term;
  double var_term;
  double i_n;
};

// Mean restricted to [-alpha/2, alpha/2], variance fixed: 1 + (alpha/sigma)*sqrt(n/(2*pi)).
AttenuationResult atten_mean_only(std::int64_t n, double alpha, double sigma);

// Mean fixed, std deviation restricted to [sigma_min, sigma_max]:
// c_n * log(sigma_max/sigma_min) + 1 with log c_n = (n/2+1) log n - n/2 - (n/2) log 2 - lgamma(n/2+1).
AttenuationResult atten_variance_only(std::int64_t n, double sigma_min, double sigma_max);

// ln c_n above; exposed because the Monte Carlo stratification reuses it.
double log_variance_coefficient(std::int64_t n);

// Gaussian mass I_n of the deviation ellipsoid {z : z'(I+11')z <= n}, z ~ N(0, (I+11')^{-1}).
// I_1 = 1 by convention; for n >= 2 this equals the chi-squared CDF P((n-1)/2, n/2).
double compute_in(std::int64_t n);

AttenuationTerms atten_exact_terms(std::int64_t n, const GaussianClass& cls);

// Exact attenuation for the two-parameter class, any n >= 1. Evaluated in the
// log domain; region masses are (1/2 + var/2, joint + mean, 1/2 + var/2).
AttenuationResult atten_exact(std::int64_t n, const GaussianClass& cls);

AttenuationTerms atten_approx_terms(std::int64_t n, const GaussianClass& cls);

// Leading-order approximation, n >= 2 only; drops the O(1) constant, so it is
// not interchangeable with the exact form and may fall below 1.
AttenuationResult atten_approx(std::int64_t n, const GaussianClass& cls);

}  // namespace nmlg
