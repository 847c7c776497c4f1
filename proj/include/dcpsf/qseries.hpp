#pragma once

// Truncated power series in the nome q with real, strictly increasing
// exponents on an integer grid:
//
//   S(q) = sum_{l=0}^{L} N_l q^{A_l},   A_l = (l + offset) / V.
//
// Every series carries its own truncation order L; binary operations keep
// only the range on which all inputs are known, never zero-padding.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "dcpsf/rational.hpp"

namespace dcpsf {

class QSeries {
 public:
  /// Builds a series whose term l has exponent leading + l / denom.
  /// Leading zero coefficients are absorbed into the exponent and the grid is
  /// compacted to the smallest denominator that represents every stored
  /// exponent. `weight` is the growth degree used for tail bounds (the
  /// dimension parameter for theta products). A `polynomial` series is known
  /// to vanish beyond its last stored term.
  QSeries(std::int64_t denom, Exponent leading, std::vector<double> coeffs,
          double weight = 0.0, bool polynomial = false);

  /// The constant series 1.
  static QSeries unit();

  std::int64_t denom() const noexcept { return denom_; }
  const Exponent& leading_exponent() const noexcept { return leading_; }
  /// The additive offset in A_l = (l + offset) / V.
  double offset() const noexcept {
    return leading_.value() * static_cast<double>(denom_);
  }
  std::span<const double> coeffs() const noexcept { return coeffs_; }
  double coeff(std::size_t l) const { return coeffs_.at(l); }
  std::size_t trunc_order() const noexcept { return coeffs_.size() - 1; }
  double weight() const noexcept { return weight_; }
  bool is_polynomial() const noexcept { return polynomial_; }

  /// A_l as a real number.
  double exponent(std::size_t l) const;
  /// A_l, exact when the leading exponent is exact.
  Exponent exact_exponent(std::size_t l) const;

  /// Keeps the terms whose exponent does not exceed `max_exponent`.
  QSeries truncated_to_exponent(const Exponent& max_exponent) const;

 private:
  void canonicalize();

  std::int64_t denom_;
  Exponent leading_;
  std::vector<double> coeffs_;
  double weight_;
  bool polynomial_;
};

struct WeightedSeries {
  double coeff;
  QSeries series;
};

/// Linear combination on the least common refinement of the input grids.
/// Zero-coefficient entries are ignored. Throws OffsetMismatch when two
/// leading exponents differ by an amount that no integer grid represents.
QSeries lincomb(std::span<const WeightedSeries> terms);

/// Cauchy product; offsets add and grids refine to the lcm.
QSeries mul(const QSeries& a, const QSeries& b);

/// a^alpha via the J.C.P. Miller recurrence. alpha >= 0.
QSeries pow_real(const QSeries& a, double alpha);

/// Substitution q -> q^s.
QSeries rescale(const QSeries& a, const Rational& s);

struct EvalResult {
  double value = 0.0;
  /// Estimated magnitude of the neglected terms beyond the truncation order.
  double tail = 0.0;
  bool tail_exceeds_tol = false;
};

/// Sum of the stored terms at 0 < q < 1, plus a tail estimate derived from the
/// polynomial coefficient envelope.
EvalResult eval(const QSeries& a, double q, double tol = 1e-12);

/// 2^d (1 + d/l)^l (1 + l/d)^d, the Cauchy-estimate bound on the l-th
/// coefficient of a product of theta factors of total power d. l = 0 gives
/// the limiting value 2^d.
double polynomial_coeff_bound(double d, double l);

/// Smallest C with |N_l| <= C * polynomial_coeff_bound(weight, l) over the
/// stored terms. Used as the growth constant for tails beyond the truncation.
double envelope_constant(const QSeries& a);

/// Upper estimate of sum_{l >= first} term(l) for a positive sequence whose
/// successive ratios eventually decrease below one. Returns +inf if the
/// sequence has not settled after `max_terms` evaluations.
double bounded_tail_sum(std::size_t first,
                        const std::function<double(std::size_t)>& term,
                        std::size_t max_terms = std::size_t{1} << 22);

}  // namespace dcpsf
