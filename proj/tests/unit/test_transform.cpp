#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "dcpsf/errors.hpp"
#include "dcpsf/transform.hpp"
#include "oracles.hpp"

using namespace dcpsf;
using std::numbers::pi;

namespace {

GaussPoly gauss(double c, int k, double alpha) { return GaussPoly({{c, k, alpha}}); }

// 2 pi^a (pi p)^{-nu} int_0^R f(r) r^a J_nu(2 pi p r) dr by Simpson's rule,
// valid for nu >= 0 (d >= 2).
double bessel_oracle(const GaussPoly& f, double p, double d) {
  const double a = 0.5 * d;
  const double nu = a - 1.0;
  const double integral = oracle::simpson(
      [&](double r) {
        return f(r) * std::pow(r, a) * std::cyl_bessel_j(nu, 2.0 * pi * p * r);
      },
      0.0, 14.0, 40000);
  return 2.0 * std::pow(pi, a) * std::pow(pi * p, -nu) * integral;
}

}  // namespace

TEST_CASE("Gaussian fixed point of the transform") {
  const GaussPoly g = gauss(1.0, 0, pi);
  for (double d : {1.0, 1.5, 2.0, 3.3, 4.0, 6.0}) {
    for (double p : {0.0, 0.4, 1.0, 2.5, 5.0}) {
      const double want = std::exp(-pi * p * p);
      INFO("d = " << d << " p = " << p);
      CHECK(std::fabs(ft_closed(g, p, d) - want) < 1e-10 * std::max(want, 1e-300));
      CHECK(std::fabs(ft_quadrature(g, p, d).value - want) <= 1e-10 * want);
    }
  }
}

TEST_CASE("closed form examples") {
  CHECK(ft_closed(gauss(1.0, 0, 1.0), 0.0, 2.0) == doctest::Approx(pi).epsilon(1e-15));
  CHECK(ft_quadrature(gauss(1.0, 0, 1.0), 1.0, 2.0).value ==
        doctest::Approx(1.624931817981536870723e-4).epsilon(1e-12));
  CHECK(ft_closed(GaussPoly{}, 0.7, 3.0) == 0.0);
  CHECK_THROWS_AS(ft_closed(gauss(1.0, 0, 0.0), 0.5, 2.0), DomainError);
  CHECK_THROWS_AS(ft_closed(gauss(1.0, 0, 1.0), -0.5, 2.0), DomainError);
  CHECK_THROWS_AS(ft_closed(gauss(1.0, 0, 1.0), 0.5, 0.5), DomainError);
  CHECK(ft_closed(gauss(1.0, 0, 1.0), 0.5, 0.5, true) ==
        doctest::Approx(std::pow(pi, 0.25) * std::exp(-pi * pi * 0.25)));
}

TEST_CASE("closed form against an independent Bessel-kernel quadrature") {
  const std::vector<GaussPoly> fs = {gauss(1.0, 1, 1.0), gauss(-0.7, 3, 0.5),
                                     gauss(2.0, 2, 4.0)};
  for (const auto& f : fs) {
    for (double d : {2.0, 2.7, 4.0}) {
      for (double p : {0.3, 0.8}) {
        const double want = bessel_oracle(f, p, d);
        INFO("d = " << d << " p = " << p);
        CHECK(ft_closed(f, p, d) == doctest::Approx(want).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("integer dimensions reduce to classical kernels") {
  // d = 1: 2 int f(r) cos(2 pi p r) dr; d = 3: (2/p) int f(r) r sin(2 pi p r) dr
  const GaussPoly f = GaussPoly({{1.0, 1, 1.3}, {0.4, 0, 0.6}});
  for (double p : {0.2, 0.9, 1.7}) {
    const double cos_t = 2.0 * oracle::simpson(
        [&](double r) { return f(r) * std::cos(2.0 * pi * p * r); }, 0.0, 14.0, 20000);
    const double sin_t = (2.0 / p) * oracle::simpson(
        [&](double r) { return f(r) * r * std::sin(2.0 * pi * p * r); }, 0.0, 14.0, 20000);
    CHECK(ft_closed(f, p, 1.0) == doctest::Approx(cos_t).epsilon(1e-10));
    CHECK(ft_closed(f, p, 3.0) == doctest::Approx(sin_t).epsilon(1e-10));
    CHECK(ft_quadrature(f, p, 1.0).value == doctest::Approx(cos_t).epsilon(1e-10));
    CHECK(ft_quadrature(f, p, 3.0).value == doctest::Approx(sin_t).epsilon(1e-10));
  }
}

TEST_CASE("quadrature agrees with closed forms on r^2 e^{-r^2}") {
  const GaussPoly f = gauss(1.0, 1, 1.0);
  for (double p : {0.0, 0.5, 2.0}) {
    for (double d : {1.5, 3.0}) {
      const TransformResult q = ft_quadrature(f, p, d);
      const double c = ft_closed(f, p, d);
      INFO("p = " << p << " d = " << d);
      CHECK(std::fabs(q.value - c) <= 1e-9 * std::fabs(c));
      CHECK(std::fabs(q.value - c) <= 10.0 * q.error + 1e-300);
    }
  }
}

TEST_CASE("real-axis and contour routes agree where both are accurate") {
  const GaussPoly f = GaussPoly({{1.0, 2, 0.9}});
  TransformSettings real_only;
  real_only.use_contour = false;
  for (double d : {1.5, 2.7}) {
    const double p = 1.0;  // pi^2 p^2 / alpha ~ 11: contour on by default
    const double a = ft_quadrature(f, p, d).value;
    const double b = ft_quadrature(f, p, d, real_only).value;
    CHECK(a == doctest::Approx(b).epsilon(1e-9));
    CHECK(a == doctest::Approx(ft_closed(f, p, d)).epsilon(1e-11));
  }
}

TEST_CASE("p = 0 reduces to the radial moment") {
  const GaussPoly f = gauss(1.0, 2, 2.0);
  const double d = 2.6;
  const double moment = 0.5 * std::tgamma(0.5 * (4.0 + d)) / std::pow(2.0, 0.5 * (4.0 + d));
  CHECK(ft_quadrature(f, 0.0, d).value ==
        doctest::Approx(radial_measure(d) * moment).epsilon(1e-12));
}

TEST_CASE("sampled function without closed form") {
  Sampled s;
  s.f = [](double r) { return std::exp(-r * r * r * r); };
  s.decay = {std::exp(0.25), 1.0};
  TransformSettings coarse;
  coarse.rel_tol = 1e-11;
  TransformSettings fine = coarse;
  fine.panels_per_oscillation *= 2.0;
  const double a = ft_quadrature(s, 0.5, 2.5, coarse).value;
  const double b = ft_quadrature(s, 0.5, 2.5, fine).value;
  CHECK(std::fabs(a - b) < 1e-8);
  // mpmath quad, 30 digits
  CHECK(a == doctest::Approx(0.70637090543258340407).epsilon(1e-10));

  Sampled bad;
  bad.f = s.f;
  bad.decay = {1.0, 0.0};
  CHECK_THROWS_AS(ft_quadrature(bad, 0.5, 2.5), DomainError);
}

TEST_CASE("transform is linear") {
  const GaussPoly f = gauss(1.0, 1, 0.8);
  const GaussPoly g = gauss(1.0, 0, 2.5);
  const GaussPoly h = f.scaled(0.3) + g.scaled(-1.7);
  for (double p : {0.0, 0.6, 1.9}) {
    const double want = 0.3 * ft_closed(f, p, 2.2) - 1.7 * ft_closed(g, p, 2.2);
    CHECK(ft_closed(h, p, 2.2) == doctest::Approx(want).epsilon(1e-14));
    CHECK(ft_quadrature(h, p, 2.2).value == doctest::Approx(want).epsilon(1e-10));
  }
}

TEST_CASE("Laplacian on the Gaussian-polynomial class") {
  const double d = 2.4;
  const GaussPoly lg = laplacian_d(gauss(1.0, 0, 1.0), d, 1);
  const GaussPoly want = GaussPoly({{-2.0 * d, 0, 1.0}, {4.0, 1, 1.0}});
  for (double r : {0.0, 0.5, 1.7}) CHECK(lg(r) == doctest::Approx(want(r)));
  CHECK(laplacian_d(gauss(3.0, 0, 0.0), d, 1).terms().empty());
  CHECK(laplacian_d(gauss(2.0, 1, 0.0), 3.0, 1)(0.7) == doctest::Approx(12.0));
}

TEST_CASE("Laplacian against finite differences") {
  const GaussPoly f = gauss(1.0, 1, 1.0);
  const double d = 3.0;
  const GaussPoly lf = laplacian_d(f, d, 1);
  const double h = 1e-4;
  for (double r : {0.3, 1.0, 2.0}) {
    const double f2 = (f(r + h) - 2.0 * f(r) + f(r - h)) / (h * h);
    const double f1 = (f(r + h) - f(r - h)) / (2.0 * h);
    CHECK(lf(r) == doctest::Approx(f2 + (d - 1.0) * f1 / r).epsilon(1e-6));
  }
}

TEST_CASE("eigenfunction identity") {
  CHECK(eigen_residual(gauss(1.0, 0, 1.0), 1.0, 2.5, 1) < 1e-10);
  CHECK(eigen_residual(gauss(1.0, 1, 2.0), 0.7, 3.2, 2) < 1e-9);
  const GaussPoly f = GaussPoly({{1.0, 2, 0.5}, {-2.0, 0, 3.0}});
  CHECK(eigen_residual(f, 0.0, 2.0, 2) ==
        doctest::Approx(std::fabs(ft_closed(laplacian_d(f, 2.0, 2), 0.0, 2.0))));
  CHECK_THROWS_AS(eigen_residual(f, 0.5, 1.0, 1), DomainError);
  // Terms of size 1e7 cancelling to zero at p = 0.
  CHECK(eigen_residual(gauss(1.0, 3, 0.5), 0.0, 4.0, 2) < 1e-12);
}
