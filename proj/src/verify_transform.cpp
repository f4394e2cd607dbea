#include <cmath>
#include <stdexcept>

#include "nmlg/verify.hpp"

namespace nmlg {

TransformedSample to_mean_deviation(std::span<const double> xs) {
  if (xs.empty()) throw std::invalid_argument("to_mean_deviation: empty sequence");
  double mean = 0.0;
  std::int64_t k = 0;
  for (double x : xs) {
    k++;
    mean += (x - mean) / static_cast<double>(k);
  }
  TransformedSample t;
  t.y = mean;
  t.z.resize(xs.size() - 1);
  for (std::size_t j = 0; j + 1 < xs.size(); j++) t.z[j] = xs[j] - mean;
  return t;
}

std::vector<double> from_mean_deviation(const TransformedSample& t) {
  std::vector<double> xs(t.z.size() + 1);
  double sum = 0.0;
  for (std::size_t j = 0; j < t.z.size(); j++) {
    xs[j] = t.y + t.z[j];
    sum += t.z[j];
  }
  xs[t.z.size()] = t.y - sum;
  return xs;
}

namespace deviation {

double chol_diag(std::int64_t j) {
  if (j < 1) throw std::invalid_argument("chol_diag: requires j >= 1");
  double jd = static_cast<double>(j);
  return std::sqrt((jd + 1.0) / jd);
}

double chol_off(std::int64_t j) {
  if (j < 1) throw std::invalid_argument("chol_off: requires j >= 1");
  double jd = static_cast<double>(j);
  return 1.0 / std::sqrt(jd * (jd + 1.0));
}

void solve_upper(std::span<const double> w, std::span<double> z) {
  if (w.empty() || w.size() != z.size())
    throw std::invalid_argument("solve_upper: size mismatch");
  std::size_t m = w.size();
  // C is upper triangular with C[j][j] = diag(j) and C[j][i] = off(j) for
  // i > j, so back substitution only needs the running tail sum of z.
  double tail = 0.0;
  for (std::size_t jj = m; jj-- > 0;) {
    std::int64_t j = static_cast<std::int64_t>(jj) + 1;
    z[jj] = (w[jj] - chol_off(j) * tail) / chol_diag(j);
    tail += z[jj];
  }
}

double quadratic_form(std::span<const double> z) {
  double sum_sq = 0.0;
  double sum = 0.0;
  for (double v : z) {
    sum_sq += v * v;
    sum += v;
  }
  return sum_sq + sum * sum;
}

}  // namespace deviation

}  // namespace nmlg
