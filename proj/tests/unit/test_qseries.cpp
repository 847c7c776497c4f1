#include <doctest.h>

#include <cmath>
#include <vector>

#include "dcpsf/errors.hpp"
#include "dcpsf/qseries.hpp"
#include "dcpsf/theta.hpp"
#include "oracles.hpp"

using namespace dcpsf;

namespace {

QSeries th(int kind, std::size_t order) {
  return theta::series(theta_kind_from_int(kind), order);
}

void check_coeffs(const QSeries& s, const std::vector<double>& want,
                  double tol = 1e-12) {
  REQUIRE(s.trunc_order() + 1 >= want.size());
  for (std::size_t l = 0; l < want.size(); ++l) {
    INFO("l = " << l);
    CHECK(s.coeff(l) == doctest::Approx(want[l]).epsilon(tol).scale(1.0));
  }
}

}  // namespace

TEST_CASE("construction normalizes leading zeros and grid") {
  const QSeries s(4, Exponent(Rational{0}), {0.0, 0.0, 3.0, 0.0, 5.0});
  CHECK(s.leading_exponent().exact() == Rational(1, 2));
  CHECK(s.denom() == 2);
  CHECK(s.coeff(0) == 3.0);
  CHECK(s.coeff(1) == 5.0);
  CHECK_THROWS_AS(QSeries(1, Exponent(Rational{0}), {}), DomainError);
  CHECK_THROWS_AS(QSeries(1, Exponent(Rational(-1, 2)), {1.0}), DomainError);
}

TEST_CASE("exponents are strictly increasing and start non-negative") {
  const QSeries s = mul(th(2, 20), pow_real(th(3, 20), 1.3));
  CHECK(s.exponent(0) >= 0.0);
  for (std::size_t l = 1; l <= s.trunc_order(); ++l) {
    CHECK(s.exponent(l) > s.exponent(l - 1));
  }
}

TEST_CASE("lincomb examples") {
  const QSeries t3sq = mul(th(3, 10), th(3, 10));
  const QSeries t4sq = mul(th(4, 10), th(4, 10));
  const std::vector<WeightedSeries> ignore{{1.0, t3sq}, {0.0, t4sq}};
  const QSeries same = lincomb(ignore);
  CHECK(same.denom() == t3sq.denom());
  check_coeffs(same, {1, 4, 4, 0, 4, 8, 0, 0, 4, 4, 8});

  const auto d2 = oracle::lattice_counts(2, 10, oracle::even_sum);
  const std::vector<WeightedSeries> half{{0.5, t3sq}, {0.5, t4sq}};
  const QSeries dd = lincomb(half);
  check_coeffs(dd, d2);

  const QSeries z2 = t3sq;
  const std::vector<WeightedSeries> back{{2.0, dd}, {-1.0, z2}};
  check_coeffs(lincomb(back), {1, -4, 4, 0, 4, -8, 0, 0, 4, -4, 8});
}

TEST_CASE("lincomb aligns shifted exact offsets and rejects irrational ones") {
  const QSeries a = th(2, 8);
  const QSeries b = th(3, 8);
  const std::vector<WeightedSeries> mix{{1.0, a}, {1.0, b}};
  const QSeries s = lincomb(mix);
  CHECK(s.denom() == 4);
  CHECK(s.leading_exponent().exact() == Rational(0));
  CHECK(s.coeff(0) == 1.0);
  CHECK(s.coeff(1) == 2.0);  // q^{1/4}
  CHECK(s.coeff(4) == 2.0);  // q^1

  const QSeries irr = pow_real(th(2, 8), std::sqrt(2.0));
  const std::vector<WeightedSeries> bad{{1.0, irr}, {1.0, b}};
  CHECK_THROWS_AS(lincomb(bad), OffsetMismatch);
}

TEST_CASE("mul examples") {
  const auto z2 = oracle::lattice_counts(2, 5);
  check_coeffs(mul(th(3, 5), th(3, 5)).truncated_to_exponent(Rational(5)), z2);

  const QSeries s = th(3, 12);
  const QSeries u = mul(s, QSeries::unit());
  CHECK(u.trunc_order() == s.trunc_order());
  check_coeffs(u, std::vector<double>(s.coeffs().begin(), s.coeffs().end()));

  const QSeries t2 = mul(th(2, 12), th(2, 12));
  CHECK(t2.leading_exponent().exact() == Rational(1, 2));
  // 4 q^{1/2} (1 + 2q^2 + q^4 + 2q^6): the minimal grid is 1/2.
  CHECK(t2.denom() == 2);
  CHECK(t2.coeff(0) == 4.0);
  CHECK(t2.coeff(4) == 8.0);
  CHECK(t2.coeff(8) == 4.0);
  CHECK(t2.coeff(12) == 8.0);
  CHECK(t2.coeff(2) == 0.0);
}

TEST_CASE("pow_real examples") {
  const QSeries t3 = th(3, 20);
  const QSeries zero = pow_real(t3, 0.0);
  CHECK(zero.is_polynomial());
  CHECK(zero.coeff(0) == 1.0);
  CHECK(pow_real(t3, 1.0).coeffs().size() == t3.coeffs().size());
  check_coeffs(pow_real(t3, 0.5), {1, 1, -0.5, 0.5, 0.375}, 1e-15);
  CHECK_THROWS_AS(pow_real(t3, -1.0), NegativeExponent);
  CHECK_THROWS_AS(pow_real(QSeries(1, Exponent(Rational{0}), {-1.0, 1.0}), 0.5),
                  DomainError);
}

TEST_CASE("pow_real of a theta factor keeps its offset exact when possible") {
  const QSeries s = pow_real(th(2, 20), 0.6);
  CHECK(s.leading_exponent().is_exact());
  CHECK(s.leading_exponent().exact() == Rational(3, 20));
  const QSeries r = pow_real(th(2, 20), 3.141592653589793);
  CHECK_FALSE(r.leading_exponent().is_exact());
  CHECK(r.leading_exponent().value() == doctest::Approx(3.141592653589793 / 4));
}

TEST_CASE("integer powers agree with repeated products") {
  for (int kind : {2, 3, 4}) {
    const QSeries base = th(kind, 200);
    QSeries prod = base;
    for (int m = 2; m <= 4; ++m) {
      prod = mul(prod, base);
      const QSeries p = pow_real(base, m);
      REQUIRE(p.trunc_order() == prod.trunc_order());
      CHECK(p.leading_exponent().value() ==
            doctest::Approx(prod.leading_exponent().value()));
      for (std::size_t l = 0; l <= p.trunc_order(); ++l) {
        const double want = prod.coeff(l);
        INFO("kind " << kind << " m " << m << " l " << l);
        CHECK(std::fabs(p.coeff(l) - want) <= 1e-12 * std::max(1.0, std::fabs(want)));
      }
    }
  }
}

TEST_CASE("power law a^(x+y) = a^x a^y") {
  const double exps[] = {0.3, 0.5, 1.7};
  for (int kind : {3, 4}) {
    const QSeries base = th(kind, 120);
    for (double x : exps) {
      for (double y : exps) {
        const QSeries lhs = pow_real(base, x + y);
        const QSeries rhs = mul(pow_real(base, x), pow_real(base, y));
        REQUIRE(lhs.trunc_order() == rhs.trunc_order());
        for (std::size_t l = 0; l <= lhs.trunc_order(); ++l) {
          const double want = rhs.coeff(l);
          CHECK(std::fabs(lhs.coeff(l) - want) <=
                1e-10 * std::max(1.0, std::fabs(want)));
        }
      }
    }
  }
}

TEST_CASE("rescale examples and round trip") {
  const QSeries t3 = th(3, 9);
  CHECK(rescale(t3, 1).denom() == 1);
  const QSeries two = rescale(t3, 2);
  CHECK(two.denom() == 1);
  check_coeffs(two, {1, 0, 2, 0, 0, 0, 0, 0, 2});

  const QSeries half = rescale(th(2, 6), Rational(1, 2));
  CHECK(half.denom() == 8);
  CHECK(half.leading_exponent().exact() == Rational(1, 8));
  CHECK(half.offset() == doctest::Approx(1.0));
  // 2 q^{1/8} (1 + q + q^3): relative indices 0, 8, 24 on the 1/8 grid.
  CHECK(half.coeff(0) == 2.0);
  CHECK(half.coeff(8) == 2.0);
  CHECK(half.coeff(24) == 2.0);

  const QSeries t2 = th(2, 30);
  const QSeries back = rescale(rescale(t2, Rational(3, 5)), Rational(5, 3));
  CHECK(back.denom() == t2.denom());
  CHECK(back.leading_exponent().exact() == t2.leading_exponent().exact());
  REQUIRE(back.trunc_order() == t2.trunc_order());
  for (std::size_t l = 0; l <= t2.trunc_order(); ++l) {
    CHECK(back.coeff(l) == t2.coeff(l));
  }
  CHECK_THROWS_AS(rescale(t2, Rational(0)), DomainError);
}

TEST_CASE("eval examples") {
  CHECK(eval(QSeries::unit(), 0.37).value == 1.0);
  CHECK(eval(QSeries::unit(), 0.37).tail == 0.0);

  const EvalResult r = eval(th(3, 100), std::exp(-M_PI));
  CHECK(r.value == doctest::Approx(1.08643481121330801457).epsilon(1e-15));
  CHECK_FALSE(r.tail_exceeds_tol);

  const double q = std::exp(-1.0);
  const double a = eval(th(3, 200), q).value;
  const double b = eval(mul(th(3, 200), th(3, 200)), q).value;
  CHECK(b == doctest::Approx(a * a).epsilon(1e-14));
  CHECK_THROWS_AS(eval(th(3, 4), 1.0), DomainError);
  CHECK_THROWS_AS(eval(th(3, 4), 0.0), DomainError);
}

TEST_CASE("eval tail estimate covers the change from more terms") {
  const double q = 0.6;
  for (std::size_t order : {4, 9, 16, 25, 36}) {
    const QSeries s = pow_real(th(3, order), 2.5);
    const QSeries longer = pow_real(th(3, 400), 2.5);
    const EvalResult short_eval = eval(s, q);
    const EvalResult long_eval = eval(longer, q);
    INFO("order " << order);
    CHECK(std::fabs(long_eval.value - short_eval.value) <= short_eval.tail);
  }
}

TEST_CASE("tail sum helper") {
  const double t = bounded_tail_sum(0, [](std::size_t l) {
    return std::pow(0.5, static_cast<double>(l));
  });
  CHECK(t == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(std::isinf(bounded_tail_sum(1, [](std::size_t) { return 1.0; }, 1000)));
}
