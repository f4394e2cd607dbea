#pragma once

#include <cstdint>

#include "nmlg/gauss.hpp"

namespace nmlg {

// Envelope normalized to a probability density over length-n sequences:
// q*(x) = sup_p p(x) / A where A is the exact attenuation.
struct UniversalDensity {
  GaussianClass cls;
  std::int64_t n;
  double log_atten;

  UniversalDensity(const GaussianClass& cls, std::int64_t n);
};

// log q*(x); stats.n must equal u.n.
double log_q_star(const UniversalDensity& u, const SufficientStats& stats);

// log p_{mu,sigma}(x) - log q*(x); (mu, sigma) must lie in the class box.
// Bounded above by log_atten for every in-class parameter choice, with
// equality at the (unclipped) maximum likelihood parameters.
double regret(const UniversalDensity& u, double mu, double sigma, const SufficientStats& stats);

// Ideal code length -log2 q*(x) in bits.
double codelength_bits(const UniversalDensity& u, const SufficientStats& stats);

}  // namespace nmlg
