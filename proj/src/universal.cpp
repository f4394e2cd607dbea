#include "nmlg/universal.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nmlg/attenuation.hpp"

namespace nmlg {

UniversalDensity::UniversalDensity(const GaussianClass& cls, std::int64_t n)
    : cls(cls), n(n), log_atten(atten_exact(n, cls).log_value) {}

double log_q_star(const UniversalDensity& u, const SufficientStats& stats) {
  if (stats.n != u.n) throw std::invalid_argument("log_q_star: sequence length mismatch");
  return log_envelope_seq(stats, u.cls) - u.log_atten;
}

double regret(const UniversalDensity& u, double mu, double sigma, const SufficientStats& stats) {
  if (mu < u.cls.mean_lo() || mu > u.cls.mean_hi() || sigma < u.cls.sigma_min ||
      sigma > u.cls.sigma_max)
    throw std::domain_error("regret: parameters outside the class box");
  return log_density_seq(stats, mu, sigma) - log_q_star(u, stats);
}

double codelength_bits(const UniversalDensity& u, const SufficientStats& stats) {
  return -log_q_star(u, stats) / std::numbers::ln2;
}

}  // namespace nmlg
