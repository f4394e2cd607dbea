#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "nmlg/attenuation.hpp"
#include "nmlg/gauss.hpp"
#include "nmlg/rng.hpp"
#include "nmlg/specfun.hpp"

using nmlg::atten_approx;
using nmlg::atten_exact;
using nmlg::atten_exact_terms;
using nmlg::atten_mean_only;
using nmlg::atten_variance_only;
using nmlg::compute_in;
using nmlg::GaussianClass;

TEST_CASE("mean-only closed form") {
  for (std::int64_t n : {1, 2, 10, 1000}) {
    for (double alpha : {0.0, 1.0, 5.0}) {
      for (double sigma : {0.5, 1.0, 3.0}) {
        auto r = atten_mean_only(n, alpha, sigma);
        double expect = 1.0 + alpha / sigma * std::sqrt(n / (2.0 * std::numbers::pi));
        CHECK(r.value == doctest::Approx(expect).epsilon(1e-14));
        CHECK(r.log_value == doctest::Approx(std::log(expect)).epsilon(1e-14));
      }
    }
  }
}

TEST_CASE("variance coefficient against independent arithmetic") {
  // c_n = n^{n/2+1} e^{-n/2} / (2^{n/2} Gamma(n/2+1)); small n reduces to rationals of e.
  CHECK(std::exp(nmlg::log_variance_coefficient(1)) ==
        doctest::Approx(std::sqrt(2.0 / (std::numbers::pi * std::numbers::e))).epsilon(1e-14));
  CHECK(std::exp(nmlg::log_variance_coefficient(2)) ==
        doctest::Approx(2.0 / std::numbers::e).epsilon(1e-14));
  CHECK(std::exp(nmlg::log_variance_coefficient(4)) ==
        doctest::Approx(8.0 * std::exp(-2.0)).epsilon(1e-14));
  CHECK(std::exp(nmlg::log_variance_coefficient(6)) ==
        doctest::Approx(27.0 * std::exp(-3.0)).epsilon(1e-14));
}

TEST_CASE("variance-only closed form") {
  for (std::int64_t n : {1, 2, 7, 100}) {
    double cn = std::exp(nmlg::log_variance_coefficient(n));
    auto r = atten_variance_only(n, 0.5, 2.0);
    CHECK(r.value == doctest::Approx(cn * std::log(4.0) + 1.0).epsilon(1e-13));
    auto unit = atten_variance_only(n, 1.3, 1.3);
    CHECK(unit.value == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(unit.log_value == doctest::Approx(0.0).epsilon(1e-15));
  }
}

TEST_CASE("length-1 value in closed form") {
  GaussianClass cls(1.0, 1.0, std::numbers::e);
  double expect = 1.0 + 1.0 / std::sqrt(2.0 * std::numbers::pi) +
                  std::sqrt(2.0 / (std::numbers::pi * std::numbers::e));
  auto r = atten_exact(1, cls);
  CHECK(r.value == doctest::Approx(expect).epsilon(1e-14));
  auto t = atten_exact_terms(1, cls);
  CHECK(t.joint_term == 0.0);  // factor (n-1) kills the joint term at n = 1
  CHECK(t.i_n == 1.0);
}

TEST_CASE("ellipsoid mass basics") {
  CHECK(compute_in(1) == 1.0);
  CHECK(compute_in(2) == doctest::Approx(nmlg::specfun::erf(1.0)).epsilon(1e-13));
  CHECK(compute_in(2) == doctest::Approx(std::erf(1.0)).epsilon(1e-13));
  for (std::int64_t n : {2, 3, 5, 10, 100, 10000}) {
    double v = compute_in(n);
    CHECK(v > 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("exact value reduces to the one-parameter forms") {
  for (std::int64_t n = 1; n <= 50; n++) {
    GaussianClass mean_only(2.5, 0.8, 0.8);
    CHECK(atten_exact(n, mean_only).value ==
          doctest::Approx(atten_mean_only(n, 2.5, 0.8).value).epsilon(1e-12));
    GaussianClass var_only(0.0, 0.5, 2.0);
    CHECK(atten_exact(n, var_only).value ==
          doctest::Approx(atten_variance_only(n, 0.5, 2.0).value).epsilon(1e-12));
  }
}

TEST_CASE("regions sum to the value and are symmetric") {
  nmlg::rng::Stream rs(23, 0, 0);
  for (int trial = 0; trial < 30; trial++) {
    double alpha = 4.0 * rs.uniform();
    double s_min = 0.2 + 1.8 * rs.uniform();
    GaussianClass cls(alpha, s_min, s_min * (1.0 + 3.0 * rs.uniform()));
    std::int64_t n = 1 + static_cast<std::int64_t>(rs.uniform() * 30);
    auto r = atten_exact(n, cls);
    REQUIRE(r.regions.has_value());
    CHECK(r.regions->r1 == r.regions->r3);
    CHECK(r.regions->r1 + r.regions->r2 + r.regions->r3 ==
          doctest::Approx(r.value).epsilon(1e-12));
    CHECK(r.value >= 1.0);
    auto t = atten_exact_terms(n, cls);
    CHECK(t.joint_term >= 0.0);
    CHECK(t.mean_term >= 0.0);
    CHECK(t.var_term >= 0.0);
    CHECK(r.value ==
          doctest::Approx(1.0 + t.joint_term + t.mean_term + t.var_term).epsilon(1e-12));
  }
}

TEST_CASE("monotone in every class parameter and in n") {
  GaussianClass base(1.0, 0.5, 2.0);
  double prev = 0.0;
  for (std::int64_t n = 1; n <= 64; n *= 2) {
    double v = atten_exact(n, base).value;
    CHECK(v > prev);
    prev = v;
  }
  for (double alpha = 0.0; alpha < 4.0; alpha += 0.5) {
    CHECK(atten_exact(8, GaussianClass(alpha, 0.5, 2.0)).value <
          atten_exact(8, GaussianClass(alpha + 0.5, 0.5, 2.0)).value);
  }
  CHECK(atten_exact(8, GaussianClass(1.0, 0.5, 2.0)).value >
        atten_exact(8, GaussianClass(1.0, 0.6, 2.0)).value);
  CHECK(atten_exact(8, GaussianClass(1.0, 0.5, 2.0)).value <
        atten_exact(8, GaussianClass(1.0, 0.5, 2.5)).value);
}

TEST_CASE("approximate form tracks the exact one at large n") {
  GaussianClass cls(1.0, 0.5, 2.0);
  double ratio = atten_approx(4096, cls).value / atten_exact(4096, cls).value;
  CHECK(ratio == doctest::Approx(1.0).epsilon(0.05));
  CHECK_THROWS_AS(atten_approx(1, cls), std::domain_error);
  // The approximation keeps only growing terms; tiny classes can fall below 1.
  CHECK(atten_approx(2, GaussianClass(0.0, 1.0, 1.0)).value == 0.0);
}

TEST_CASE("log-domain evaluation survives n = 1e6") {
  GaussianClass cls(1.0, 0.5, 2.0);
  auto r = atten_exact(1000000, cls);
  CHECK(std::isfinite(r.log_value));
  CHECK(std::isfinite(r.value));  // linear growth stays inside double range
  CHECK(r.log_value > 12.0);
  CHECK(r.log_value < 14.0);
  CHECK(r.value == doctest::Approx(std::exp(r.log_value)).epsilon(1e-12));
}

TEST_CASE("parameter validation") {
  GaussianClass cls(1.0, 0.5, 2.0);
  CHECK_THROWS_AS(atten_exact(0, cls), std::domain_error);
  CHECK_THROWS_AS(atten_mean_only(0, 1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(atten_mean_only(1, -1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(atten_variance_only(1, 2.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(compute_in(0), std::domain_error);
}

TEST_CASE("method names") {
  CHECK(nmlg::method_name(nmlg::Method::exact) == "exact");
  CHECK(nmlg::method_name(nmlg::Method::approx) == "approx");
  CHECK(nmlg::method_name(nmlg::Method::quadrature) == "quadrature");
  CHECK(nmlg::method_name(nmlg::Method::monte_carlo) == "mc");
}
