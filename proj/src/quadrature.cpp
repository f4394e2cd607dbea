#include "nmlg/quadrature.hpp"

#include <cmath>
#include <queue>
#include <vector>

#include "nmlg/errors.hpp"

namespace nmlg {

namespace {

// 15-point Kronrod extension of 7-point Gauss (QUADPACK QK15 constants).
const double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
const double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
const double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  double value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel eval_panel(const std::function<double(double)>& f, double a, double b) {
  double c = 0.5 * (a + b);
  double h = 0.5 * (b - a);
  double fc = f(c);
  double kron = wgk[7] * fc;
  double gauss = wg[3] * fc;
  for (int j = 0; j < 7; j++) {
    double fa = f(c - h * xgk[j]);
    double fb = f(c + h * xgk[j]);
    kron += wgk[j] * (fa + fb);
    if (j % 2 == 1) gauss += wg[j / 2] * (fa + fb);
  }
  kron *= h;
  gauss *= h;
  return Panel{a, b, kron, std::fabs(kron - gauss)};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol, int max_panels) {
  if (!(abs_tol > 0.0)) throw std::domain_error("integrate_adaptive: requires abs_tol > 0");
  if (a == b) return QuadratureResult{0.0, 0.0, 0};
  std::priority_queue<Panel> queue;
  queue.push(eval_panel(f, a, b));
  int panels = 1;
  double total_error = queue.top().error;
  while (total_error > abs_tol) {
    if (panels >= max_panels)
      throw convergence_error("integrate_adaptive: panel budget exhausted");
    Panel worst = queue.top();
    queue.pop();
    double mid = 0.5 * (worst.a + worst.b);
    Panel left = eval_panel(f, worst.a, mid);
    Panel right = eval_panel(f, mid, worst.b);
    total_error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    panels++;
  }
  double value = 0.0;
  double error = 0.0;
  // Drain smallest-last so the sum accumulates small panels first.
  std::vector<Panel> all;
  all.reserve(queue.size());
  while (!queue.empty()) {
    all.push_back(queue.top());
    queue.pop();
  }
  for (auto it = all.rbegin(); it != all.rend(); ++it) {
    value += it->value;
    error += it->error;
  }
  return QuadratureResult{value, error, panels};
}

}  // namespace nmlg
