#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

namespace dcpsf {

/// Exact rational number with 64-bit numerator and positive denominator,
/// always stored in lowest terms. Arithmetic that would overflow throws
/// CoefficientOverflow.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);  // NOLINT(implicit)

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  double to_double() const noexcept {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }
  bool is_integer() const noexcept { return den_ == 1; }
  Rational inverse() const;

  /// Best rational approximation with denominator <= max_den whose distance
  /// from x is at most tol * max(1, |x|); nullopt if none exists.
  static std::optional<Rational> approximate(double x,
                                             std::int64_t max_den = 1000,
                                             double tol = 1e-14);

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b);

  std::string to_string() const;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::int64_t checked_lcm(std::int64_t a, std::int64_t b);

/// An exponent of the nome: kept exact whenever it derives from rational
/// data, otherwise a plain real.
class Exponent {
 public:
  Exponent() = default;
  Exponent(const Rational& r) : exact_(r), value_(r.to_double()) {}  // NOLINT
  static Exponent real(double v) {
    Exponent e;
    e.exact_.reset();
    e.value_ = v;
    return e;
  }

  bool is_exact() const noexcept { return exact_.has_value(); }
  const Rational& exact() const { return *exact_; }
  double value() const noexcept { return value_; }

  /// Smallest positive integer D with D * exponent integral (1 for reals).
  std::int64_t denominator() const noexcept {
    return exact_ ? exact_->den() : 1;
  }

  Exponent operator+(const Exponent& o) const;
  Exponent operator-(const Exponent& o) const;
  Exponent operator*(const Rational& s) const;
  Exponent scaled(double alpha) const;

 private:
  std::optional<Rational> exact_{Rational{}};
  double value_ = 0.0;
};

}  // namespace dcpsf
