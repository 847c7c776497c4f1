#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "dcpsf/errors.hpp"
#include "dcpsf/special.hpp"

using namespace dcpsf;
using std::numbers::pi;

TEST_CASE("gamma values") {
  CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(pi)).epsilon(1e-15));
  // mpmath, 30 digits
  CHECK(gamma_fn(3.7) == doctest::Approx(4.17065178379660316539).epsilon(1e-14));
  for (double x : {0.1, 0.75, 1.3, 2.5, 7.2, 20.5}) {
    CHECK(gamma_fn(x + 1.0) == doctest::Approx(x * gamma_fn(x)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(gamma_fn(0.0), DomainError);
  CHECK_THROWS_AS(gamma_fn(-1.5), DomainError);
}

TEST_CASE("hyp0f1 elementary cases") {
  CHECK(hyp0f1(2.3, 0.0) == 1.0);
  CHECK(hyp0f1(0.5, -pi * pi / 4.0) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(std::fabs(hyp0f1(1.5, -pi * pi)) < 1e-14);
  for (double z : {0.3, 4.0, 50.0}) {
    CHECK(hyp0f1(0.5, z) ==
          doctest::Approx(std::cosh(2.0 * std::sqrt(z))).epsilon(1e-14));
  }
  CHECK_THROWS_AS(hyp0f1(0.0, 1.0), DomainError);
}

TEST_CASE("hyp0f1 on the negative axis against closed forms") {
  // a = 1/2: cos(2 sqrt z); a = 3/2: sin(2 sqrt z) / (2 sqrt z)
  for (double z : {0.1, 3.0, 99.0, 399.0, 401.0, 1200.0, 9.0e4, 2.5e6}) {
    const double x = 2.0 * std::sqrt(z);
    INFO("z = " << z);
    CHECK(std::fabs(hyp0f1(0.5, -z) - std::cos(x)) < 1e-12);
    CHECK(std::fabs(hyp0f1(1.5, -z) - std::sin(x) / x) < 1e-12 / x);
  }
}

TEST_CASE("hyp0f1 against the library Bessel function") {
  for (double a : {1.0, 1.25, 1.75, 2.0, 3.0}) {
    for (double z : {0.5, 7.0, 60.0, 350.0, 450.0, 3000.0, 1.0e5}) {
      const double x = 2.0 * std::sqrt(z);
      const double want =
          std::tgamma(a) * std::pow(0.5 * x, 1.0 - a) * std::cyl_bessel_j(a - 1.0, x);
      // Amplitude of the oscillation; the library routine itself is only
      // good to about 1e-11 of it for large arguments.
      const double amp =
          std::tgamma(a) * std::pow(0.5 * x, 0.5 - a) / std::sqrt(pi);
      INFO("a = " << a << " z = " << z);
      CHECK(std::fabs(hyp0f1(a, -z) - want) < 1e-11 * std::min(1.0, amp));
    }
  }
}

TEST_CASE("hyp0f1 reference values") {
  // mpmath, 30 digits
  struct Row {
    double a, z, want;
  };
  const Row rows[] = {{1.75, -1e5, -0.00022050310219527706552},
                      {1.35, -399.0, 0.024079711305231629362},
                      {2.35, -401.0, 0.0022825291799532221026},
                      {1.25, -2500.0, -0.0037736584591077749154},
                      {0.75, -37.5, 0.33053068115947799472},
                      {3.1, -1e4, 3.2129484278448609716e-6}};
  for (const auto& row : rows) {
    INFO("a = " << row.a << " z = " << row.z);
    CHECK(hyp0f1(row.a, row.z) == doctest::Approx(row.want).epsilon(1e-12));
  }
}

TEST_CASE("hyp0f1 is continuous across the evaluation switch") {
  for (double a : {0.5, 1.25, 2.35}) {
    const double below = hyp0f1(a, -kHyp0f1Switch);
    const double above = hyp0f1(a, -std::nextafter(kHyp0f1Switch, 1e9));
    CHECK(std::fabs(below - above) < 1e-13);
  }
}

TEST_CASE("Hankel expansions against the library on the real axis") {
  for (double nu : {0.0, 0.25, 1.5, 2.0}) {
    for (double x : {25.0, 60.0}) {
      const std::complex<double> h =
          hankel1_scaled_asymptotic(nu, x) * std::exp(std::complex<double>(0, x));
      INFO("nu = " << nu << " x = " << x);
      CHECK(h.real() == doctest::Approx(std::cyl_bessel_j(nu, x)).epsilon(1e-11));
      CHECK(h.imag() == doctest::Approx(std::cyl_neumann(nu, x)).epsilon(1e-11));
      CHECK(bessel_j_asymptotic(nu, x) ==
            doctest::Approx(std::cyl_bessel_j(nu, x)).epsilon(1e-11));
    }
  }
}

TEST_CASE("Hankel expansion off the real axis matches the modified Bessel K") {
  // H1_nu(i y) = (2 / pi) e^{-i pi (nu + 1) / 2} K_nu(y)
  for (double nu : {0.3, 1.0}) {
    const double y = 30.0;
    const std::complex<double> w(0.0, y);
    const std::complex<double> h = hankel1_scaled_asymptotic(nu, w) * std::exp(-y);
    const std::complex<double> want =
        2.0 / pi * std::exp(std::complex<double>(0, -pi * (nu + 1.0) / 2.0)) *
        std::cyl_bessel_k(nu, y);
    CHECK(std::abs(h - want) < 1e-12 * std::abs(want));
  }
}
