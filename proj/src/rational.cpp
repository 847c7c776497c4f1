#include "dcpsf/rational.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>

#include "dcpsf/errors.hpp"

namespace dcpsf {
namespace {

std::int64_t mul_checked(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw CoefficientOverflow("rational arithmetic overflow");
  }
  return r;
}

std::int64_t add_checked(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) {
    throw CoefficientOverflow("rational arithmetic overflow");
  }
  return r;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  if (den < 0) {
    num = mul_checked(num, -1);
    den = mul_checked(den, -1);
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

Rational Rational::inverse() const {
  if (num_ == 0) throw DomainError("inverse of zero");
  return Rational(den_, num_);
}

std::optional<Rational> Rational::approximate(double x, std::int64_t max_den,
                                              double tol) {
  if (!std::isfinite(x)) return std::nullopt;
  const double limit = tol * std::max(1.0, std::fabs(x));
  // Continued-fraction convergents h/k.
  double rem = x;
  std::int64_t h_prev = 1, h = 0, k_prev = 0, k = 1;
  for (int iter = 0; iter < 64; ++iter) {
    const double a_f = std::floor(rem);
    if (std::fabs(a_f) > 9.0e15) break;
    const auto a = static_cast<std::int64_t>(a_f);
    std::int64_t h_next = 0, k_next = 0;
    if (__builtin_mul_overflow(a, h_prev, &h_next) ||
        __builtin_add_overflow(h_next, h, &h_next) ||
        __builtin_mul_overflow(a, k_prev, &k_next) ||
        __builtin_add_overflow(k_next, k, &k_next)) {
      break;
    }
    if (k_next > max_den) break;
    h = h_prev;
    k = k_prev;
    h_prev = h_next;
    k_prev = k_next;
    const double approx =
        static_cast<double>(h_prev) / static_cast<double>(k_prev);
    if (std::fabs(approx - x) <= limit) return Rational(h_prev, k_prev);
    const double frac = rem - a_f;
    if (frac == 0.0) break;
    rem = 1.0 / frac;
  }
  return std::nullopt;
}

Rational operator+(const Rational& a, const Rational& b) {
  const std::int64_t g = std::gcd(a.den_, b.den_);
  const std::int64_t lhs = mul_checked(a.num_, b.den_ / g);
  const std::int64_t rhs = mul_checked(b.num_, a.den_ / g);
  return Rational(add_checked(lhs, rhs), mul_checked(a.den_ / g, b.den_));
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  const std::int64_t g1 = std::gcd(a.num_, b.den_);
  const std::int64_t g2 = std::gcd(b.num_, a.den_);
  const std::int64_t n1 = g1 == 0 ? a.num_ : a.num_ / g1;
  const std::int64_t d2 = g1 == 0 ? b.den_ : b.den_ / g1;
  const std::int64_t n2 = g2 == 0 ? b.num_ : b.num_ / g2;
  const std::int64_t d1 = g2 == 0 ? a.den_ : a.den_ / g2;
  return Rational(mul_checked(n1, n2), mul_checked(d1, d2));
}

Rational operator/(const Rational& a, const Rational& b) {
  return a * b.inverse();
}

Rational Rational::operator-() const {
  return Rational(mul_checked(num_, -1), den_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  __extension__ using wide = __int128;
  const wide lhs = static_cast<wide>(a.num_) * b.den_;
  const wide rhs = static_cast<wide>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::int64_t checked_lcm(std::int64_t a, std::int64_t b) {
  if (a <= 0 || b <= 0) throw DomainError("lcm of non-positive integers");
  return mul_checked(a / std::gcd(a, b), b);
}

Exponent Exponent::operator+(const Exponent& o) const {
  if (is_exact() && o.is_exact()) return Exponent(*exact_ + *o.exact_);
  return real(value_ + o.value_);
}

Exponent Exponent::operator-(const Exponent& o) const {
  if (is_exact() && o.is_exact()) return Exponent(*exact_ - *o.exact_);
  return real(value_ - o.value_);
}

Exponent Exponent::operator*(const Rational& s) const {
  if (is_exact()) return Exponent(*exact_ * s);
  return real(value_ * s.to_double());
}

Exponent Exponent::scaled(double alpha) const {
  if (is_exact()) {
    if (exact_->num() == 0) return Exponent(Rational{});
    if (auto r = Rational::approximate(alpha)) return Exponent(*exact_ * *r);
  }
  return real(value_ * alpha);
}

}  // namespace dcpsf
