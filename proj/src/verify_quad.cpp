#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nmlg/errors.hpp"
#include "nmlg/gauss.hpp"
#include "nmlg/quadrature.hpp"
#include "nmlg/verify.hpp"

namespace nmlg {

namespace {

// Mass of one Gaussian tail of envelope_1d beyond the truncation point, where
// the envelope coincides with a shifted N(alpha/2, sigma_max^2) density.
double tail_mass_1d() { return 0.5 * std::erfc(12.0 / std::numbers::sqrt2); }

}  // namespace

IntegralEstimate quadrature_atten_1d(const GaussianClass& cls, double rel_tol) {
  if (!(rel_tol > 1e-12) || !(rel_tol < 1e-2))
    throw std::domain_error("quadrature_atten_1d: rel_tol must lie in (1e-12, 1e-2)");
  auto f = [&](double x) { return envelope_1d(x, cls); };
  double a2 = 0.5 * cls.alpha;
  double cutoff = a2 + 12.0 * cls.sigma_max;
  // Piece boundaries on the positive axis; the negative axis mirrors them.
  std::array<double, 5> edges = {0.0, a2, a2 + cls.sigma_min, a2 + cls.sigma_max, cutoff};

  // Cheap single-panel pass to size the absolute tolerances.
  double scale = 2.0 * tail_mass_1d();
  for (int i = 0; i < 4; i++)
    scale += 2.0 * integrate_adaptive(f, edges[i], edges[i + 1], 1e300).value;
  scale = std::max(scale, 1.0);

  double piece_tol = rel_tol * scale / 10.0;
  double value = 0.0;
  double error = 0.0;
  std::array<double, 4> piece{};
  for (int i = 0; i < 4; i++) {
    QuadratureResult r = integrate_adaptive(f, edges[i], edges[i + 1], piece_tol);
    piece[i] = r.value;
    value += 2.0 * r.value;
    error += 2.0 * r.error_estimate;
  }
  value += 2.0 * tail_mass_1d();

  if (error > rel_tol * std::max(value, 1.0))
    throw convergence_error("quadrature_atten_1d: requested tolerance not reached");

  double side = piece[1] + piece[2] + piece[3] + tail_mass_1d();
  IntegralEstimate est;
  est.value = value;
  est.regions = RegionMasses{side, 2.0 * piece[0], side};
  est.error_estimate = error;
  return est;
}

IntegralEstimate quadrature_atten_2d(const GaussianClass& cls, double rel_tol) {
  if (!(rel_tol > 1e-10) || !(rel_tol < 1e-2))
    throw std::domain_error("quadrature_atten_2d: rel_tol must lie in (1e-10, 1e-2)");
  double a2 = 0.5 * cls.alpha;
  double reach = a2 + 12.0 * cls.sigma_max;

  // Integrand in mean/deviation coordinates: x = (y + z, y - z), area factor 2.
  auto integrand = [&](double y, double z) {
    std::array<double, 2> xs = {y + z, y - z};
    return std::exp(log_envelope_seq(SufficientStats::from_sequence(xs), cls));
  };
  auto inner = [&](double y, double abs_tol) {
    auto fz = [&](double z) { return integrand(y, z); };
    return integrate_adaptive(fz, -reach, reach, abs_tol, 8192).value;
  };

  // Ranges of y split at the mean-box edges so region masses fall out directly.
  std::array<double, 4> yedges = {-reach, -a2, a2, reach};

  double pre_tol = 1e-3 / cls.sigma_min;
  double scale = 0.0;
  for (int i = 0; i < 3; i++) {
    auto g = [&](double y) { return inner(y, pre_tol); };
    scale += 2.0 * integrate_adaptive(g, yedges[i], yedges[i + 1], 1e300).value;
  }
  scale = std::max(scale, 1.0);

  // Half of the relative budget goes to the outer panels, a twentieth to the
  // accumulated inner truncation; both are measured on the (y, z) integral.
  double half = 0.5 * scale;
  double inner_tol = half * rel_tol / (20.0 * 2.0 * reach);
  double outer_tol = half * rel_tol / 6.0;

  double value = 0.0;
  double error = 2.0 * (2.0 * reach) * inner_tol;
  std::array<double, 3> range{};
  for (int i = 0; i < 3; i++) {
    auto g = [&](double y) { return inner(y, inner_tol); };
    QuadratureResult r = integrate_adaptive(g, yedges[i], yedges[i + 1], outer_tol, 8192);
    range[i] = 2.0 * r.value;
    value += 2.0 * r.value;
    error += 2.0 * r.error_estimate;
  }

  // Truncation remainder: beyond the box the envelope is dominated by a
  // sigma_max Gaussian scaled by (sigma_max/sigma_min)^2.
  double ratio = cls.sigma_max / cls.sigma_min;
  error += 2.0 * ratio * ratio * std::erfc(12.0);

  if (error > rel_tol * std::max(value, 1.0))
    throw convergence_error("quadrature_atten_2d: requested tolerance not reached");

  IntegralEstimate est;
  est.value = value;
  est.regions = RegionMasses{range[0], range[1], range[2]};
  est.error_estimate = error;
  return est;
}

}  // namespace nmlg
