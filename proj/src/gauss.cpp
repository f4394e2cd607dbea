#include "nmlg/gauss.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nmlg {

double clamp(double value, double lo, double hi) {
  if (std::isnan(lo) || std::isnan(hi) || lo > hi)
    throw std::invalid_argument("clamp: requires lo <= hi");
  if (value < lo) return lo;
  if (value > hi) return hi;
  return value;
}

GaussianClass::GaussianClass(double alpha, double sigma_min, double sigma_max)
    : alpha(alpha), sigma_min(sigma_min), sigma_max(sigma_max) {
  if (!std::isfinite(alpha) || !std::isfinite(sigma_min) || !std::isfinite(sigma_max))
    throw std::invalid_argument("GaussianClass: parameters must be finite");
  if (!(alpha >= 0.0)) throw std::invalid_argument("GaussianClass: requires alpha >= 0");
  if (!(sigma_min > 0.0)) throw std::invalid_argument("GaussianClass: requires sigma_min > 0");
  if (!(sigma_min <= sigma_max))
    throw std::invalid_argument("GaussianClass: requires sigma_min <= sigma_max");
}

SufficientStats::SufficientStats(std::int64_t n, double mean, double sse)
    : n(n), mean(mean), sse(sse) {
  if (n < 1) throw std::invalid_argument("SufficientStats: requires n >= 1");
  if (!std::isfinite(mean) || !std::isfinite(sse))
    throw std::invalid_argument("SufficientStats: mean and sse must be finite");
  if (!(sse >= 0.0)) throw std::invalid_argument("SufficientStats: requires sse >= 0");
}

SufficientStats SufficientStats::from_sequence(std::span<const double> xs) {
  if (xs.empty()) throw std::invalid_argument("SufficientStats: empty sequence");
  double mean = 0.0;
  double m2 = 0.0;
  std::int64_t k = 0;
  for (double x : xs) {
    if (!std::isfinite(x)) throw std::invalid_argument("SufficientStats: non-finite observation");
    k++;
    double d1 = x - mean;
    mean += d1 / static_cast<double>(k);
    m2 += d1 * (x - mean);
  }
  if (m2 < 0.0) m2 = 0.0;  // rounding can leave a tiny negative residual
  return SufficientStats(k, mean, m2);
}

MlEstimate ml_estimate(const SufficientStats& stats, const GaussianClass& cls) {
  double nd = static_cast<double>(stats.n);
  double mu_hat = clamp(stats.mean, cls.mean_lo(), cls.mean_hi());
  // Squared deviations about the clipped mean, via the parallel-axis identity.
  double centered = stats.sse + nd * (stats.mean - mu_hat) * (stats.mean - mu_hat);
  double sigma_hat_sq =
      clamp(centered / nd, cls.sigma_min * cls.sigma_min, cls.sigma_max * cls.sigma_max);
  double log_phat =
      -0.5 * nd * std::log(2.0 * std::numbers::pi * sigma_hat_sq) - centered / (2.0 * sigma_hat_sq);
  return MlEstimate{mu_hat, sigma_hat_sq, log_phat};
}

double log_envelope_seq(const SufficientStats& stats, const GaussianClass& cls) {
  return ml_estimate(stats, cls).log_phat;
}

double envelope_1d(double x, const GaussianClass& cls) {
  if (!std::isfinite(x)) throw std::invalid_argument("envelope_1d: non-finite x");
  static const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  double r = std::fabs(x) - 0.5 * cls.alpha;  // distance beyond the mean box
  if (r <= 0.0) return inv_sqrt_2pi / cls.sigma_min;
  if (r <= cls.sigma_min)
    return inv_sqrt_2pi / cls.sigma_min * std::exp(-r * r / (2.0 * cls.sigma_min * cls.sigma_min));
  if (r <= cls.sigma_max)
    return inv_sqrt_2pi / std::sqrt(std::numbers::e) / r;
  return inv_sqrt_2pi / cls.sigma_max * std::exp(-r * r / (2.0 * cls.sigma_max * cls.sigma_max));
}

double log_density_seq(const SufficientStats& stats, double mu, double sigma) {
  if (!std::isfinite(mu) || !(sigma > 0.0) || !std::isfinite(sigma))
    throw std::domain_error("log_density_seq: requires finite mu and sigma > 0");
  double nd = static_cast<double>(stats.n);
  double centered = stats.sse + nd * (stats.mean - mu) * (stats.mean - mu);
  return -0.5 * nd * std::log(2.0 * std::numbers::pi * sigma * sigma) -
         centered / (2.0 * sigma * sigma);
}

}  // namespace nmlg
