#include "nmlg/attenuation.hpp"

#include <cmath>
#include <initializer_list>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "nmlg/specfun.hpp"

namespace nmlg {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_sum_exp(std::initializer_list<double> logs) {
  double m = kNegInf;
  for (double v : logs)
    if (v > m) m = v;
  if (m == kNegInf) return kNegInf;
  double s = 0.0;
  for (double v : logs) s += std::exp(v - m);
  return m + std::log(s);
}

void require_n(std::int64_t n, std::int64_t lo, const char* msg) {
  if (n < lo) throw std::domain_error(msg);
}

// ln of alpha * sqrt(n/(2pi)) * (I_n/s_min + (1-I_n)/s_max); -inf when alpha = 0.
double log_mean_term(std::int64_t n, const GaussianClass& cls, double i_n) {
  double nd = static_cast<double>(n);
  double mix = i_n / cls.sigma_min + (1.0 - i_n) / cls.sigma_max;
  return std::log(cls.alpha) + 0.5 * (std::log(nd) - std::log(2.0 * std::numbers::pi)) +
         std::log(mix);
}

// ln of alpha * n^{n/2} (n-1) e^{-n/2} / (2^{n/2} sqrt(pi) Gamma(n/2+1/2)) * (1/s_min - 1/s_max).
// -inf when n = 1, alpha = 0, or the sigma interval is degenerate.
double log_joint_term(std::int64_t n, const GaussianClass& cls) {
  double nd = static_cast<double>(n);
  double spread = 1.0 / cls.sigma_min - 1.0 / cls.sigma_max;
  return std::log(cls.alpha) + 0.5 * nd * std::log(nd) + std::log(nd - 1.0) - 0.5 * nd -
         0.5 * nd * std::log(2.0) - 0.5 * std::log(std::numbers::pi) -
         specfun::log_gamma(0.5 * nd + 0.5) + std::log(spread);
}

// ln of c_n * log(s_max/s_min); -inf when the sigma interval is degenerate.
double log_var_term(std::int64_t n, const GaussianClass& cls) {
  double span = std::log(cls.sigma_max / cls.sigma_min);
  return log_variance_coefficient(n) + std::log(span);
}

}  // namespace

std::string_view method_name(Method m) {
  switch (m) {
    case Method::exact: return "exact";
    case Method::approx: return "approx";
    case Method::quadrature: return "quadrature";
    case Method::monte_carlo: return "mc";
  }
  return "unknown";
}

AttenuationResult atten_mean_only(std::int64_t n, double alpha, double sigma) {
  require_n(n, 1, "atten_mean_only: requires n >= 1");
  if (!(alpha >= 0.0) || !std::isfinite(alpha) || !(sigma > 0.0) || !std::isfinite(sigma))
    throw std::domain_error("atten_mean_only: requires alpha >= 0 and sigma > 0");
  double nd = static_cast<double>(n);
  double log_term = std::log(alpha) - std::log(sigma) +
                    0.5 * (std::log(nd) - std::log(2.0 * std::numbers::pi));
  double log_value = log_sum_exp({0.0, log_term});
  return AttenuationResult{log_value, std::exp(log_value), Method::exact, std::nullopt,
                           std::nullopt};
}

double log_variance_coefficient(std::int64_t n) {
  require_n(n, 1, "log_variance_coefficient: requires n >= 1");
  double nd = static_cast<double>(n);
  return (0.5 * nd + 1.0) * std::log(nd) - 0.5 * nd - 0.5 * nd * std::log(2.0) -
         specfun::log_gamma(0.5 * nd + 1.0);
}

AttenuationResult atten_variance_only(std::int64_t n, double sigma_min, double sigma_max) {
  require_n(n, 1, "atten_variance_only: requires n >= 1");
  if (!(sigma_min > 0.0) || !(sigma_min <= sigma_max) || !std::isfinite(sigma_max))
    throw std::domain_error("atten_variance_only: requires 0 < sigma_min <= sigma_max");
  double span = std::log(sigma_max / sigma_min);
  double log_value = log_sum_exp({0.0, log_variance_coefficient(n) + std::log(span)});
  return AttenuationResult{log_value, std::exp(log_value), Method::exact, std::nullopt,
                           std::nullopt};
}

double compute_in(std::int64_t n) {
  require_n(n, 1, "compute_in: requires n >= 1");
  if (n == 1) return 1.0;
  return specfun::regularized_gamma_p(0.5 * static_cast<double>(n - 1),
                                      0.5 * static_cast<double>(n));
}

AttenuationTerms atten_exact_terms(std::int64_t n, const GaussianClass& cls) {
  require_n(n, 1, "atten_exact: requires n >= 1");
  double i_n = compute_in(n);
  double joint = std::exp(log_joint_term(n, cls));
  double mean = std::exp(log_mean_term(n, cls, i_n));
  double var = std::exp(log_var_term(n, cls));
  return AttenuationTerms{joint, mean, var, i_n};
}

AttenuationResult atten_exact(std::int64_t n, const GaussianClass& cls) {
  require_n(n, 1, "atten_exact: requires n >= 1");
  double i_n = compute_in(n);
  double lj = log_joint_term(n, cls);
  double lm = log_mean_term(n, cls, i_n);
  double lv = log_var_term(n, cls);
  double log_value = log_sum_exp({0.0, lj, lm, lv});
  double var = std::exp(lv);
  RegionMasses regions{0.5 + 0.5 * var, std::exp(lj) + std::exp(lm), 0.5 + 0.5 * var};
  return AttenuationResult{log_value, std::exp(log_value), Method::exact, regions, std::nullopt};
}

AttenuationTerms atten_approx_terms(std::int64_t n, const GaussianClass& cls) {
  require_n(n, 2, "atten_approx: requires n >= 2");
  double nd = static_cast<double>(n);
  double i_n = compute_in(n);
  double spread = 1.0 / cls.sigma_min - 1.0 / cls.sigma_max;
  double joint = std::exp(std::log(cls.alpha) + 0.5 * std::log(nd) + 0.5 * std::log(nd - 1.0) -
                          std::log(std::numbers::pi) - 0.5 * std::log(2.0) + std::log(spread));
  double mean = std::exp(log_mean_term(n, cls, i_n));
  double var = std::sqrt(nd / std::numbers::pi) * std::log(cls.sigma_max / cls.sigma_min);
  return AttenuationTerms{joint, mean, var, i_n};
}

AttenuationResult atten_approx(std::int64_t n, const GaussianClass& cls) {
  AttenuationTerms t = atten_approx_terms(n, cls);
  double value = t.joint_term + t.mean_term + t.var_term;
  return AttenuationResult{std::log(value), value, Method::approx, std::nullopt, std::nullopt};
}

}  // namespace nmlg
