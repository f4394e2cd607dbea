#pragma once

#include <cstdint>
#include <span>

namespace nmlg {

// value clamped to [lo, hi]. Throws std::invalid_argument when lo > hi or any bound is NaN.
double clamp(double value, double lo, double hi);

// Gaussians with mean in [-alpha/2, alpha/2] and std deviation in [sigma_min, sigma_max].
struct GaussianClass {
  double alpha;
  double sigma_min;
  double sigma_max;

  GaussianClass(double alpha, double sigma_min, double sigma_max);

  double mean_lo() const { return -0.5 * alpha; }
  double mean_hi() const { return 0.5 * alpha; }
  bool singleton() const { return alpha == 0.0 && sigma_min == sigma_max; }
};

// (n, mean, sse) is sufficient for the Gaussian likelihood of a sequence;
// sse = sum of squared deviations from the sample mean.
struct SufficientStats {
  std::int64_t n;
  double mean;
  double sse;

  SufficientStats(std::int64_t n, double mean, double sse);

  // One-pass accumulation (Welford updates); empty input is rejected.
  static SufficientStats from_sequence(std::span<const double> xs);
};

struct MlEstimate {
  double mu_hat;
  double sigma_hat_sq;
  double log_phat;  // log density of the sequence at the constrained ML parameters
};

// Constrained maximum likelihood over the class box: the mean clips to the box,
// the variance clips after re-centering the sum of squares at the clipped mean.
MlEstimate ml_estimate(const SufficientStats& stats, const GaussianClass& cls);

// log sup_{p in class} p(x_1..x_n), i.e. ml_estimate(...).log_phat.
double log_envelope_seq(const SufficientStats& stats, const GaussianClass& cls);

// Pointwise envelope for a single observation, in closed piecewise form.
double envelope_1d(double x, const GaussianClass& cls);

// log density of the sequence under the Gaussian with the given parameters.
double log_density_seq(const SufficientStats& stats, double mu, double sigma);

}  // namespace nmlg
