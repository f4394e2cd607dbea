#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "nmlg/attenuation.hpp"
#include "nmlg/gauss.hpp"

namespace nmlg {

struct IntegralEstimate {
  double value = 0.0;
  double std_error = 0.0;      // 0 for deterministic quadrature
  std::int64_t samples = 0;    // 0 for deterministic quadrature
  std::uint64_t seed = 0;      // 0 for deterministic quadrature
  std::optional<RegionMasses> regions;
  std::optional<RegionMasses> region_std_errors;  // stochastic methods only
  double error_estimate = 0.0;  // quadrature: achieved absolute error bound
};

// Mean / deviation coordinates: y is the sample mean, z_j = x_j - y for j < n.
// The last deviation is implied by sum(z) = -(x_n - y).
struct TransformedSample {
  double y;
  std::vector<double> z;
};

TransformedSample to_mean_deviation(std::span<const double> xs);
std::vector<double> from_mean_deviation(const TransformedSample& t);

// The deviation vector of an i.i.d. Gaussian sample has precision matrix
// (I + 11')/sigma^2. Its unit-sigma Cholesky factorization I + 11' = C'C has
// the closed form C = L', L[i][j] = off(j) for i > j, L[j][j] = diag(j), which
// makes z = C^{-1} w an O(n) backward recurrence. Indices are 1-based.
namespace deviation {
double chol_diag(std::int64_t j);
double chol_off(std::int64_t j);
// z = C^{-1} w; w and z have equal length m >= 1.
void solve_upper(std::span<const double> w, std::span<double> z);
// z'(I + 11')z computed directly in deviation coordinates.
double quadratic_form(std::span<const double> z);
}  // namespace deviation

// Integrates envelope_1d piecewise over its analytic breakpoints; the Gaussian
// tail beyond mean-extreme + 12*sigma_max is added in closed form.
// rel_tol must lie in (1e-12, 1e-2).
IntegralEstimate quadrature_atten_1d(const GaussianClass& cls, double rel_tol);

// Length-2 attenuation by iterated adaptive quadrature in mean/deviation
// coordinates (Jacobian 2), truncated at 12*sigma_max with an analytic tail
// bound folded into the error estimate. rel_tol must lie in (1e-10, 1e-2).
IntegralEstimate quadrature_atten_2d(const GaussianClass& cls, double rel_tol);

// Stratified importance sampling of the envelope integral for n >= 2.
// Strata follow the region decomposition (mean below / inside / above the box;
// variance clipped low / free / clipped high) with closed-form weights; draws
// are deterministic in (seed, samples) for every thread count.
IntegralEstimate mc_atten(std::int64_t n, const GaussianClass& cls, std::int64_t samples,
                          std::uint64_t seed, int threads = 1);

// Monte Carlo estimate of I_n: z ~ N(0, (I+11')^{-1}) via the closed-form
// Cholesky, indicator of the ellipsoid evaluated in deviation coordinates.
IntegralEstimate mc_in(std::int64_t n, std::int64_t samples, std::uint64_t seed, int threads = 1);

}  // namespace nmlg
