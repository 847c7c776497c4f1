#pragma once

// Jacobi theta functions as q-series, generalized theta series built from
// products of their real powers, and the Jacobi dual of such series.

#include <string>
#include <vector>

#include "dcpsf/qseries.hpp"
#include "dcpsf/rational.hpp"

namespace dcpsf {

enum class ThetaKind { two = 2, three = 3, four = 4 };

ThetaKind theta_kind_from_int(int kind);

/// theta_kind^power(q^scale)
struct ThetaFactor {
  ThetaKind kind = ThetaKind::three;
  double power = 0.0;
  Rational scale{1};

  friend bool operator==(const ThetaFactor&, const ThetaFactor&) = default;
};

struct ThetaTerm {
  double coeff = 1.0;
  std::vector<ThetaFactor> factors;

  friend bool operator==(const ThetaTerm&, const ThetaTerm&) = default;
};

/// A finite linear combination of products of theta factors whose powers sum
/// to the dimension parameter in every term. Validated on construction.
class ThetaSpec {
 public:
  ThetaSpec(double dim, std::vector<ThetaTerm> terms);

  double dim() const noexcept { return dim_; }
  const std::vector<ThetaTerm>& terms() const noexcept { return terms_; }
  /// True when every scale equals 1.
  bool unit_scales() const noexcept;

  /// theta_3^d, the theta series of Z^d. Valid for d >= 1.
  static ThetaSpec zd(double d);
  /// (theta_3^d + theta_4^d) / 2, the theta series of D^d.
  static ThetaSpec dd(double d);
  /// theta_4^d.
  static ThetaSpec theta4d(double d);
  /// Looks up one of "zd", "dd", "theta4d".
  static ThetaSpec preset(const std::string& name, double d);

  friend bool operator==(const ThetaSpec&, const ThetaSpec&) = default;

 private:
  double dim_;
  std::vector<ThetaTerm> terms_;
};

namespace theta {

/// theta_kind(q) through relative order `order`: exponents 0, l^2 for kinds 3
/// and 4; 1/4 + l^2 - l for kind 2.
QSeries series(ThetaKind kind, std::size_t order);

/// Classical triple-product evaluation, 0 <= q < 1.
double eval_product(ThetaKind kind, double q);

/// Direct summation of the defining nome series, 0 <= q < 1.
double eval_series(ThetaKind kind, double q);

/// Expands the spec into a single q-series known through q^max_exponent.
QSeries build(const ThetaSpec& spec, const Exponent& max_exponent);
QSeries build(const ThetaSpec& spec, std::size_t order);

/// The image of the spec under the Jacobi imaginary transformation, without
/// the determinant factor: theta_2 <-> theta_4, theta_3 fixed, scales
/// inverted, each term divided by sqrt(prod scale^power).
ThetaSpec dual(const ThetaSpec& spec);

/// |theta_a(e^{-pi/t}) - sqrt(t) theta_b(e^{-pi t})| with (a, b) = (2, 4),
/// (3, 3) or (4, 2) selected by `kind` = a.
double jacobi_residual(ThetaKind kind, double t);

/// 2^d (1 + d/l)^l (1 + l/d)^d for d >= 1, l >= 1.
double coeff_bound(double d, double l);

}  // namespace theta
}  // namespace dcpsf
