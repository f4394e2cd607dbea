#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "nmlg/gauss.hpp"
#include "nmlg/rng.hpp"

using nmlg::GaussianClass;
using nmlg::MlEstimate;
using nmlg::SufficientStats;

namespace {

// Log density of the raw sequence, summed term by term. Deliberately avoids
// SufficientStats so it can serve as an oracle for the pooled-statistics path.
double direct_log_density(const std::vector<double>& xs, double mu, double sigma) {
  double acc = 0.0;
  for (double x : xs) acc += (x - mu) * (x - mu);
  double n = static_cast<double>(xs.size());
  return -0.5 * n * std::log(2.0 * std::numbers::pi * sigma * sigma) -
         acc / (2.0 * sigma * sigma);
}

// Maximizes direct_log_density over the box by iterated grid refinement.
MlEstimate grid_ml(const std::vector<double>& xs, const GaussianClass& cls) {
  double mu_lo = cls.mean_lo(), mu_hi = cls.mean_hi();
  double s_lo = cls.sigma_min, s_hi = cls.sigma_max;
  double best_mu = mu_lo, best_s = s_lo, best = -1e300;
  const int grid = 40;
  for (int pass = 0; pass < 5; pass++) {
    double dm = (mu_hi - mu_lo) / grid;
    double ds = (s_hi - s_lo) / grid;
    for (int i = 0; i <= grid; i++) {
      for (int j = 0; j <= grid; j++) {
        double mu = mu_lo + i * dm;
        double s = s_lo + j * ds;
        double v = direct_log_density(xs, mu, s);
        if (v > best) {
          best = v;
          best_mu = mu;
          best_s = s;
        }
      }
    }
    mu_lo = std::max(cls.mean_lo(), best_mu - 2 * dm);
    mu_hi = std::min(cls.mean_hi(), best_mu + 2 * dm);
    s_lo = std::max(cls.sigma_min, best_s - 2 * ds);
    s_hi = std::min(cls.sigma_max, best_s + 2 * ds);
  }
  return MlEstimate{best_mu, best_s * best_s, best};
}

std::vector<double> random_sequence(nmlg::rng::Stream& rs, int n, double spread, double shift) {
  std::vector<double> xs(n);
  for (auto& x : xs) x = shift + spread * rs.normal();
  return xs;
}

}  // namespace

TEST_CASE("clamp") {
  CHECK(nmlg::clamp(0.5, 0.0, 1.0) == 0.5);
  CHECK(nmlg::clamp(-2.0, 0.0, 1.0) == 0.0);
  CHECK(nmlg::clamp(9.0, 0.0, 1.0) == 1.0);
  CHECK_THROWS_AS(nmlg::clamp(0.0, 1.0, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(nmlg::clamp(0.0, std::nan(""), 1.0), std::invalid_argument);
}

TEST_CASE("class constructor validates the box") {
  CHECK_NOTHROW(GaussianClass(0.0, 1.0, 1.0));
  CHECK_THROWS_AS(GaussianClass(-1.0, 1.0, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(GaussianClass(1.0, 0.0, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(GaussianClass(1.0, 2.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(GaussianClass(std::nan(""), 1.0, 2.0), std::invalid_argument);
  CHECK(GaussianClass(2.0, 1.0, 1.0).mean_lo() == -1.0);
  CHECK(GaussianClass(2.0, 1.0, 1.0).mean_hi() == 1.0);
}

TEST_CASE("sufficient statistics match a two-pass computation") {
  nmlg::rng::Stream rs(7, 0, 0);
  for (int trial = 0; trial < 50; trial++) {
    int n = 1 + static_cast<int>(rs.uniform() * 20);
    auto xs = random_sequence(rs, n, 1.0 + 3.0 * rs.uniform(), 4.0 * rs.uniform() - 2.0);
    SufficientStats st = SufficientStats::from_sequence(xs);
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= n;
    double sse = 0.0;
    for (double x : xs) sse += (x - mean) * (x - mean);
    CHECK(st.n == n);
    CHECK(st.mean == doctest::Approx(mean).epsilon(1e-13));
    CHECK(st.sse == doctest::Approx(sse).epsilon(1e-10));
  }
}

TEST_CASE("sufficient statistics are permutation invariant") {
  std::vector<double> xs{3.25, -1.5, 0.75, 2.0, -0.125, 5.5};
  SufficientStats a = SufficientStats::from_sequence(xs);
  std::vector<double> ys{5.5, 2.0, 3.25, -0.125, -1.5, 0.75};
  SufficientStats b = SufficientStats::from_sequence(ys);
  CHECK(a.mean == doctest::Approx(b.mean).epsilon(1e-15));
  CHECK(a.sse == doctest::Approx(b.sse).epsilon(1e-14));
}

TEST_CASE("sufficient statistics edge cases") {
  std::vector<double> one{2.5};
  SufficientStats st = SufficientStats::from_sequence(one);
  CHECK(st.n == 1);
  CHECK(st.mean == 2.5);
  CHECK(st.sse == 0.0);
  CHECK_THROWS_AS(SufficientStats(0, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(SufficientStats(3, 0.0, -1.0), std::invalid_argument);
  std::vector<double> bad{1.0, std::nan("")};
  CHECK_THROWS_AS(SufficientStats::from_sequence(bad), std::invalid_argument);
}

TEST_CASE("interior maximum likelihood is the unconstrained one") {
  // Sample mean inside the box and sample variance inside [s_min^2, s_max^2].
  GaussianClass cls(10.0, 0.1, 50.0);
  std::vector<double> xs{1.0, 2.0, 3.0, 4.0};
  SufficientStats st = SufficientStats::from_sequence(xs);
  MlEstimate ml = nmlg::ml_estimate(st, cls);
  CHECK(ml.mu_hat == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(ml.sigma_hat_sq == doctest::Approx(st.sse / 4.0).epsilon(1e-14));
  CHECK(ml.log_phat ==
        doctest::Approx(direct_log_density(xs, ml.mu_hat, std::sqrt(ml.sigma_hat_sq)))
            .epsilon(1e-13));
}

TEST_CASE("clipping activates on both parameters") {
  GaussianClass cls(1.0, 0.8, 1.2);
  std::vector<double> far{10.0, 10.5, 9.5, 10.0};  // mean far above, variance tiny
  SufficientStats st = SufficientStats::from_sequence(far);
  MlEstimate ml = nmlg::ml_estimate(st, cls);
  CHECK(ml.mu_hat == 0.5);
  // Residual spread around the clipped mean exceeds s_max^2, so clip upward.
  CHECK(ml.sigma_hat_sq == doctest::Approx(1.44).epsilon(1e-15));

  std::vector<double> tight{0.0, 0.0, 0.0};  // zero variance, mean inside
  SufficientStats st2 = SufficientStats::from_sequence(tight);
  MlEstimate ml2 = nmlg::ml_estimate(st2, cls);
  CHECK(ml2.mu_hat == 0.0);
  CHECK(ml2.sigma_hat_sq == doctest::Approx(0.64).epsilon(1e-15));
}

TEST_CASE("clipped maximum likelihood matches grid search") {
  nmlg::rng::Stream rs(11, 0, 0);
  for (int trial = 0; trial < 60; trial++) {
    double alpha = 4.0 * rs.uniform();
    double s_min = 0.2 + 1.8 * rs.uniform();
    double s_max = s_min * (1.0 + 3.0 * rs.uniform());
    GaussianClass cls(alpha, s_min, s_max);
    int n = 1 + static_cast<int>(rs.uniform() * 10);
    auto xs = random_sequence(rs, n, 0.3 * s_min + 2.5 * s_max * rs.uniform(),
                              alpha * (rs.uniform() - 0.5) * 2.0);
    SufficientStats st = SufficientStats::from_sequence(xs);
    MlEstimate ml = nmlg::ml_estimate(st, cls);
    MlEstimate oracle = grid_ml(xs, cls);
    CHECK(ml.log_phat >= oracle.log_phat - 1e-9);  // grid never beats the argmax
    CHECK(ml.log_phat == doctest::Approx(oracle.log_phat).epsilon(1e-6));
    CHECK(ml.log_phat ==
          doctest::Approx(direct_log_density(xs, ml.mu_hat, std::sqrt(ml.sigma_hat_sq)))
              .epsilon(1e-12));
  }
}

TEST_CASE("sequence envelope equals the density at the clipped estimate") {
  nmlg::rng::Stream rs(13, 0, 0);
  for (int trial = 0; trial < 40; trial++) {
    GaussianClass cls(2.0, 0.5, 2.0);
    int n = 1 + static_cast<int>(rs.uniform() * 8);
    auto xs = random_sequence(rs, n, 3.0, 3.0 * (rs.uniform() - 0.5));
    SufficientStats st = SufficientStats::from_sequence(xs);
    MlEstimate ml = nmlg::ml_estimate(st, cls);
    CHECK(nmlg::log_envelope_seq(st, cls) == doctest::Approx(ml.log_phat).epsilon(1e-14));
    CHECK(nmlg::log_density_seq(st, ml.mu_hat, std::sqrt(ml.sigma_hat_sq)) ==
          doctest::Approx(ml.log_phat).epsilon(1e-13));
  }
}

TEST_CASE("pointwise envelope: branch continuity and symmetry") {
  GaussianClass cls(2.0, 0.5, 3.0);
  double a2 = 1.0;
  for (double r : {0.0, cls.sigma_min, cls.sigma_max}) {
    double lo = nmlg::envelope_1d(a2 + r - 1e-10, cls);
    double hi = nmlg::envelope_1d(a2 + r + 1e-10, cls);
    CHECK(hi == doctest::Approx(lo).epsilon(1e-8));
  }
  for (double x : {0.0, 0.3, 1.0, 1.4, 2.7, 9.0}) {
    CHECK(nmlg::envelope_1d(-x, cls) == nmlg::envelope_1d(x, cls));
  }
  // Flat at the variance peak height inside the mean interval.
  CHECK(nmlg::envelope_1d(0.0, cls) ==
        doctest::Approx(1.0 / (std::sqrt(2.0 * std::numbers::pi) * cls.sigma_min))
            .epsilon(1e-15));
}

TEST_CASE("pointwise envelope dominates every class member") {
  GaussianClass cls(2.0, 0.5, 3.0);
  for (int i = 0; i <= 60; i++) {
    double mu = cls.mean_lo() + (cls.mean_hi() - cls.mean_lo()) * i / 60.0;
    for (int j = 0; j <= 60; j++) {
      double s = cls.sigma_min + (cls.sigma_max - cls.sigma_min) * j / 60.0;
      for (int k = -80; k <= 80; k++) {
        double x = 0.15 * k;
        double dens = std::exp(-0.5 * (x - mu) * (x - mu) / (s * s)) /
                      (std::sqrt(2.0 * std::numbers::pi) * s);
        CHECK(nmlg::envelope_1d(x, cls) >= dens - 1e-12);
      }
    }
  }
}

TEST_CASE("pointwise envelope agrees with the length-1 sequence envelope") {
  GaussianClass cls(1.5, 0.7, 2.5);
  for (double x : {-6.0, -1.9, -0.75, 0.0, 0.4, 0.76, 1.1, 2.2, 4.0, 8.0}) {
    std::vector<double> one{x};
    SufficientStats st = SufficientStats::from_sequence(one);
    CHECK(std::log(nmlg::envelope_1d(x, cls)) ==
          doctest::Approx(nmlg::log_envelope_seq(st, cls)).epsilon(1e-12));
  }
}

TEST_CASE("log_density_seq matches the raw-sequence sum") {
  nmlg::rng::Stream rs(17, 0, 0);
  for (int trial = 0; trial < 30; trial++) {
    int n = 1 + static_cast<int>(rs.uniform() * 12);
    auto xs = random_sequence(rs, n, 2.0, 1.0);
    SufficientStats st = SufficientStats::from_sequence(xs);
    double mu = 2.0 * (rs.uniform() - 0.5);
    double sigma = 0.5 + 2.0 * rs.uniform();
    CHECK(nmlg::log_density_seq(st, mu, sigma) ==
          doctest::Approx(direct_log_density(xs, mu, sigma)).epsilon(1e-11));
  }
  CHECK_THROWS_AS(nmlg::log_density_seq(SufficientStats(1, 0.0, 0.0), 0.0, 0.0),
                  std::domain_error);
}
