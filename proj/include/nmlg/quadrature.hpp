#pragma once

#include <functional>

namespace nmlg {

struct QuadratureResult {
  double value;
  double error_estimate;
  int panels;
};

// Adaptive Gauss-Kronrod (7, 15) on [a, b]: bisect the worst panel until the
// summed error estimate drops below abs_tol. Throws convergence_error when the
// panel budget runs out first.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol, int max_panels = 4096);

}  // namespace nmlg
