#include "dcpsf/qseries.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <string>

#include "dcpsf/errors.hpp"
#include "dcpsf/numeric.hpp"

namespace dcpsf {
namespace {

constexpr double kExponentTol = 1e-12;

// Spreads coefficients onto a grid `factor` times finer.
std::vector<double> refine(std::span<const double> c, std::int64_t factor) {
  if (factor == 1) return {c.begin(), c.end()};
  std::vector<double> out((c.size() - 1) * static_cast<std::size_t>(factor) + 1,
                          0.0);
  for (std::size_t l = 0; l < c.size(); ++l) {
    out[l * static_cast<std::size_t>(factor)] = c[l];
  }
  return out;
}

bool all_zero(std::span<const double> c) {
  return std::all_of(c.begin(), c.end(), [](double x) { return x == 0.0; });
}

void check_finite(std::span<const double> c) {
  for (double x : c) {
    if (!std::isfinite(x)) throw CoefficientOverflow("non-finite coefficient");
  }
}

}  // namespace

QSeries::QSeries(std::int64_t denom, Exponent leading,
                 std::vector<double> coeffs, double weight, bool polynomial)
    : denom_(denom),
      leading_(std::move(leading)),
      coeffs_(std::move(coeffs)),
      weight_(weight),
      polynomial_(polynomial) {
  canonicalize();
}

QSeries QSeries::unit() {
  return QSeries(1, Exponent(Rational{0}), {1.0}, 0.0, true);
}

void QSeries::canonicalize() {
  if (denom_ <= 0) throw DomainError("series grid denominator must be > 0");
  if (coeffs_.empty()) throw DomainError("empty series");
  if (leading_.value() < -kExponentTol) {
    throw DomainError("leading exponent must be >= 0");
  }
  check_finite(coeffs_);

  // Exact exponents must lie on the grid itself.
  if (leading_.is_exact() && denom_ % leading_.denominator() != 0) {
    const std::int64_t v = checked_lcm(denom_, leading_.denominator());
    coeffs_ = refine(coeffs_, v / denom_);
    denom_ = v;
  }

  if (all_zero(coeffs_)) return;

  const auto first = static_cast<std::size_t>(
      std::find_if(coeffs_.begin(), coeffs_.end(),
                   [](double x) { return x != 0.0; }) -
      coeffs_.begin());
  if (first > 0) {
    leading_ = leading_ + Exponent(Rational(static_cast<std::int64_t>(first),
                                            denom_));
    coeffs_.erase(coeffs_.begin(),
                  coeffs_.begin() + static_cast<std::ptrdiff_t>(first));
  }
  if (polynomial_) {
    while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
  }

  std::int64_t g = denom_;
  for (std::size_t l = 1; l < coeffs_.size() && g > 1; ++l) {
    if (coeffs_[l] != 0.0) g = std::gcd(g, static_cast<std::int64_t>(l));
  }
  if (leading_.is_exact()) g = std::gcd(g, denom_ / leading_.denominator());
  if (g > 1) {
    const auto step = static_cast<std::size_t>(g);
    std::vector<double> packed((coeffs_.size() - 1) / step + 1);
    for (std::size_t l = 0; l < packed.size(); ++l) packed[l] = coeffs_[l * step];
    coeffs_ = std::move(packed);
    denom_ /= g;
  }
}

double QSeries::exponent(std::size_t l) const {
  return leading_.value() +
         static_cast<double>(l) / static_cast<double>(denom_);
}

Exponent QSeries::exact_exponent(std::size_t l) const {
  return leading_ + Exponent(Rational(static_cast<std::int64_t>(l), denom_));
}

QSeries QSeries::truncated_to_exponent(const Exponent& max_exponent) const {
  std::int64_t last = 0;
  if (leading_.is_exact() && max_exponent.is_exact()) {
    const Rational span = (max_exponent.exact() - leading_.exact()) *
                          Rational(denom_);
    if (span < Rational{0}) {
      throw DomainError("truncation point lies below the leading exponent");
    }
    last = span.num() / span.den();
  } else {
    const double span =
        (max_exponent.value() - leading_.value()) * static_cast<double>(denom_);
    if (span < -kExponentTol) {
      throw DomainError("truncation point lies below the leading exponent");
    }
    last = static_cast<std::int64_t>(
        std::floor(span + kExponentTol * std::max(1.0, std::fabs(span))));
  }
  const auto keep = static_cast<std::size_t>(last);
  if (keep >= trunc_order()) return *this;
  std::vector<double> c(coeffs_.begin(),
                        coeffs_.begin() + static_cast<std::ptrdiff_t>(keep) + 1);
  return QSeries(denom_, leading_, std::move(c), weight_, false);
}

QSeries lincomb(std::span<const WeightedSeries> terms) {
  if (terms.empty()) throw DomainError("lincomb of an empty list");
  std::vector<const WeightedSeries*> live;
  for (const auto& t : terms) {
    if (t.coeff != 0.0) live.push_back(&t);
  }
  if (live.empty()) {
    const QSeries& s = terms.front().series;
    return QSeries(s.denom(), s.leading_exponent(),
                   std::vector<double>(s.trunc_order() + 1, 0.0), s.weight(),
                   s.is_polynomial());
  }

  const auto* ref = *std::min_element(
      live.begin(), live.end(), [](const auto* x, const auto* y) {
        return x->series.leading_exponent().value() <
               y->series.leading_exponent().value();
      });
  const Exponent& base = ref->series.leading_exponent();

  // Offsets relative to the smallest leading exponent, as exact rationals.
  std::int64_t v = 1;
  std::vector<Rational> shifts;
  shifts.reserve(live.size());
  for (const auto* t : live) {
    const Exponent& e = t->series.leading_exponent();
    Rational shift;
    if (e.is_exact() && base.is_exact()) {
      shift = e.exact() - base.exact();
    } else {
      const double diff = e.value() - base.value();
      auto r = Rational::approximate(diff, 100000, kExponentTol);
      if (!r) {
        throw OffsetMismatch("leading exponents differ by " +
                             std::to_string(diff) +
                             ", which no integer grid represents");
      }
      shift = *r;
    }
    v = checked_lcm(v, t->series.denom());
    v = checked_lcm(v, shift.den());
    shifts.push_back(shift);
  }

  bool all_polynomial = true;
  std::int64_t order = std::numeric_limits<std::int64_t>::max();
  std::int64_t poly_order = 0;
  double weight = 0.0;
  std::vector<std::int64_t> offsets(live.size()), factors(live.size());
  for (std::size_t i = 0; i < live.size(); ++i) {
    const QSeries& s = live[i]->series;
    offsets[i] = (shifts[i] * Rational(v)).num();
    factors[i] = v / s.denom();
    const std::int64_t end =
        offsets[i] + static_cast<std::int64_t>(s.trunc_order()) * factors[i];
    if (s.is_polynomial()) {
      poly_order = std::max(poly_order, end);
    } else {
      all_polynomial = false;
      order = std::min(order, end);
    }
    weight = std::max(weight, s.weight());
  }
  if (all_polynomial) order = poly_order;

  std::vector<CompensatedSum> acc(static_cast<std::size_t>(order) + 1);
  for (std::size_t i = 0; i < live.size(); ++i) {
    const QSeries& s = live[i]->series;
    const double c = live[i]->coeff;
    for (std::size_t l = 0; l <= s.trunc_order(); ++l) {
      const std::int64_t idx = offsets[i] + static_cast<std::int64_t>(l) * factors[i];
      if (idx > order) break;
      acc[static_cast<std::size_t>(idx)].add(c * s.coeff(l));
    }
  }
  std::vector<double> out(acc.size());
  std::transform(acc.begin(), acc.end(), out.begin(),
                 [](const CompensatedSum& x) { return x.value(); });
  return QSeries(v, base, std::move(out), weight, all_polynomial);
}

QSeries mul(const QSeries& a, const QSeries& b) {
  const std::int64_t v = checked_lcm(a.denom(), b.denom());
  const auto fa = static_cast<std::size_t>(v / a.denom());
  const auto fb = static_cast<std::size_t>(v / b.denom());
  const std::size_t end_a = a.trunc_order() * fa;
  const std::size_t end_b = b.trunc_order() * fb;

  std::size_t order = 0;
  bool polynomial = false;
  if (a.is_polynomial() && b.is_polynomial()) {
    order = end_a + end_b;
    polynomial = true;
  } else if (a.is_polynomial()) {
    order = end_b;
  } else if (b.is_polynomial()) {
    order = end_a;
  } else {
    order = std::min(end_a, end_b);
  }

  std::vector<CompensatedSum> acc(order + 1);
  const auto ca = a.coeffs();
  const auto cb = b.coeffs();
  for (std::size_t i = 0; i < ca.size() && i * fa <= order; ++i) {
    if (ca[i] == 0.0) continue;
    for (std::size_t j = 0; j < cb.size() && i * fa + j * fb <= order; ++j) {
      if (cb[j] == 0.0) continue;
      acc[i * fa + j * fb].add(ca[i] * cb[j]);
    }
  }
  std::vector<double> out(acc.size());
  std::transform(acc.begin(), acc.end(), out.begin(),
                 [](const CompensatedSum& x) { return x.value(); });
  return QSeries(v, a.leading_exponent() + b.leading_exponent(),
                 std::move(out), a.weight() + b.weight(), polynomial);
}

QSeries pow_real(const QSeries& a, double alpha) {
  if (!(alpha >= 0.0)) throw NegativeExponent("pow_real requires alpha >= 0");
  const auto c = a.coeffs();
  if (c[0] == 0.0) {
    throw ZeroLeadingCoefficient("pow_real of a series with N_0 = 0");
  }
  if (alpha == 0.0) {
    std::vector<double> one(a.trunc_order() + 1, 0.0);
    one[0] = 1.0;
    return QSeries(a.denom(), Exponent(Rational{0}), std::move(one), 0.0,
                   true);
  }
  if (alpha == 1.0) return a;
  if (c[0] < 0.0 && alpha != std::floor(alpha)) {
    throw DomainError("non-integer power of a series with negative N_0");
  }

  // Work on the coarsest grid that carries the nonzero relative exponents.
  std::int64_t g = a.denom();
  for (std::size_t l = 1; l < c.size() && g > 1; ++l) {
    if (c[l] != 0.0) g = std::gcd(g, static_cast<std::int64_t>(l));
  }
  const auto step = static_cast<std::size_t>(g);
  const std::size_t n_max = a.trunc_order() / step;
  std::vector<double> x(n_max + 1);
  for (std::size_t l = 0; l <= n_max; ++l) x[l] = c[l * step];

  // The recurrence amplifies rounding by several orders of magnitude over a
  // few hundred terms for fractional alpha, so it runs in double-double.
  const DoubleDouble alpha1 = DoubleDouble::two_sum(alpha, 1.0);
  std::vector<DoubleDouble> y(n_max + 1);
  y[0] = DoubleDouble(std::pow(x[0], alpha));
  std::vector<double> out(n_max + 1, 0.0);
  out[0] = y[0].hi;
  for (std::size_t n = 1; n <= n_max; ++n) {
    DoubleDouble s;
    const double nn = static_cast<double>(n);
    for (std::size_t k = 1; k <= n; ++k) {
      if (x[k] == 0.0) continue;
      const DoubleDouble w =
          alpha1 * DoubleDouble(static_cast<double>(k)) - DoubleDouble(nn);
      s = s + w * DoubleDouble(x[k]) * y[n - k];
    }
    y[n] = s / DoubleDouble::two_prod(nn, x[0]);
    out[n] = y[n].to_double();
    if (!std::isfinite(out[n])) {
      throw CoefficientOverflow("pow_real coefficient overflow");
    }
  }

  const Exponent lead = a.leading_exponent().scaled(alpha);
  return QSeries(a.denom() / g, lead, std::move(out), alpha * a.weight(),
                 false);
}

QSeries rescale(const QSeries& a, const Rational& s) {
  if (s <= Rational{0}) throw DomainError("rescale requires s > 0");
  const std::int64_t v = (Rational(a.denom()) * Rational(s.den())).num();
  auto c = refine(a.coeffs(), s.num());
  return QSeries(v, a.leading_exponent() * s, std::move(c), a.weight(),
                 a.is_polynomial());
}

double polynomial_coeff_bound(double d, double l) {
  if (d <= 0.0) return 1.0;
  if (l <= 0.0) return std::exp2(d);
  const double log_b = d * std::log(2.0) + l * std::log1p(d / l) +
                       d * std::log1p(l / d);
  return std::exp(log_b);
}

double envelope_constant(const QSeries& a) {
  double c = 0.0;
  const auto n = a.coeffs();
  for (std::size_t l = 0; l < n.size(); ++l) {
    if (n[l] == 0.0) continue;
    c = std::max(c, std::fabs(n[l]) /
                        polynomial_coeff_bound(a.weight(),
                                               static_cast<double>(l)));
  }
  return c;
}

double bounded_tail_sum(std::size_t first,
                        const std::function<double(std::size_t)>& term,
                        std::size_t max_terms) {
  CompensatedSum sum;
  double prev = term(first);
  sum.add(prev);
  for (std::size_t i = 1; i < max_terms; ++i) {
    const double t = term(first + i);
    sum.add(t);
    if (t == 0.0) return sum.value();
    const double ratio = t / prev;
    if (ratio < 1.0 && t <= 1e-17 * sum.value()) {
      return sum.value() + t * ratio / (1.0 - ratio);
    }
    prev = t;
  }
  return std::numeric_limits<double>::infinity();
}

EvalResult eval(const QSeries& a, double q, double tol) {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("eval requires 0 < q < 1");
  const double log_q = std::log(q);
  CompensatedSum s;
  const auto n = a.coeffs();
  for (std::size_t l = 0; l < n.size(); ++l) {
    if (n[l] == 0.0) continue;
    s.add(n[l] * std::exp(a.exponent(l) * log_q));
  }
  EvalResult r;
  r.value = s.value();
  if (!a.is_polynomial()) {
    const double c = envelope_constant(a);
    if (c > 0.0) {
      r.tail = bounded_tail_sum(a.trunc_order() + 1, [&](std::size_t l) {
        return c * polynomial_coeff_bound(a.weight(), static_cast<double>(l)) *
               std::exp(a.exponent(l) * log_q);
      });
    }
  }
  r.tail_exceeds_tol = r.tail > tol;
  return r;
}

}  // namespace dcpsf
