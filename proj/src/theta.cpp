#include "dcpsf/theta.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dcpsf/errors.hpp"
#include "dcpsf/numeric.hpp"

namespace dcpsf {
namespace {

constexpr double kPowerSumTol = 1e-12;

void check_nome(double q) {
  if (!(q >= 0.0 && q < 1.0)) throw DomainError("nome must lie in [0, 1)");
}

}  // namespace

ThetaKind theta_kind_from_int(int kind) {
  switch (kind) {
    case 2:
      return ThetaKind::two;
    case 3:
      return ThetaKind::three;
    case 4:
      return ThetaKind::four;
    default:
      throw InvalidSpec("theta kind must be 2, 3 or 4, got " +
                        std::to_string(kind));
  }
}

ThetaSpec::ThetaSpec(double dim, std::vector<ThetaTerm> terms)
    : dim_(dim), terms_(std::move(terms)) {
  if (!std::isfinite(dim_) || dim_ < 1.0) {
    throw InvalidSpec("dimension parameter must be >= 1");
  }
  if (terms_.empty()) throw InvalidSpec("spec needs at least one term");
  for (const auto& t : terms_) {
    if (!std::isfinite(t.coeff)) throw InvalidSpec("non-finite coefficient");
    if (t.factors.empty()) throw InvalidSpec("term without factors");
    CompensatedSum total;
    for (const auto& f : t.factors) {
      if (!std::isfinite(f.power) || f.power < 0.0) {
        throw InvalidSpec("factor powers must be finite and >= 0");
      }
      if (f.scale <= Rational{0}) throw InvalidSpec("scales must be > 0");
      total.add(f.power);
    }
    if (std::fabs(total.value() - dim_) > kPowerSumTol * std::max(1.0, dim_)) {
      throw InvalidSpec("factor powers of a term sum to " +
                        std::to_string(total.value()) + ", expected " +
                        std::to_string(dim_));
    }
  }
  // At d = 1 only the Z lattice form is admitted.
  if (dim_ == 1.0) {
    for (const auto& t : terms_) {
      for (const auto& f : t.factors) {
        if (f.power != 0.0 &&
            (f.kind != ThetaKind::three || f.scale != Rational{1})) {
          throw InvalidSpec(
              "d = 1 is only supported for the theta_3 (Z lattice) series");
        }
      }
    }
  }
}

bool ThetaSpec::unit_scales() const noexcept {
  for (const auto& t : terms_) {
    for (const auto& f : t.factors) {
      if (f.scale != Rational{1}) return false;
    }
  }
  return true;
}

ThetaSpec ThetaSpec::zd(double d) {
  return ThetaSpec(d, {{1.0, {{ThetaKind::three, d, 1}}}});
}

ThetaSpec ThetaSpec::dd(double d) {
  return ThetaSpec(d, {{0.5, {{ThetaKind::three, d, 1}}},
                       {0.5, {{ThetaKind::four, d, 1}}}});
}

ThetaSpec ThetaSpec::theta4d(double d) {
  return ThetaSpec(d, {{1.0, {{ThetaKind::four, d, 1}}}});
}

ThetaSpec ThetaSpec::preset(const std::string& name, double d) {
  if (name == "zd") return zd(d);
  if (name == "dd") return dd(d);
  if (name == "theta4d") return theta4d(d);
  throw InvalidSpec("unknown preset '" + name + "'");
}

namespace theta {

QSeries series(ThetaKind kind, std::size_t order) {
  switch (kind) {
    case ThetaKind::three:
    case ThetaKind::four: {
      std::vector<double> c(order + 1, 0.0);
      c[0] = 1.0;
      for (std::size_t l = 1; l * l <= order; ++l) {
        const bool odd = (l % 2) == 1;
        c[l * l] = (kind == ThetaKind::four && odd) ? -2.0 : 2.0;
      }
      return QSeries(1, Exponent(Rational{0}), std::move(c), 1.0);
    }
    case ThetaKind::two: {
      std::vector<double> c(order + 1, 0.0);
      for (std::size_t l = 1; l * l - l <= order; ++l) c[l * l - l] = 2.0;
      return QSeries(1, Exponent(Rational(1, 4)), std::move(c), 1.0);
    }
  }
  throw InvalidSpec("unknown theta kind");
}

double eval_product(ThetaKind kind, double q) {
  check_nome(q);
  if (q == 0.0) return kind == ThetaKind::two ? 0.0 : 1.0;
  double prod = 1.0;
  for (int n = 1;; ++n) {
    const double odd = std::pow(q, 2 * n - 1);
    const double even = odd * q;
    if (odd < 1e-17) break;
    switch (kind) {
      case ThetaKind::three:
        prod *= (1.0 - even) * (1.0 + odd) * (1.0 + odd);
        break;
      case ThetaKind::four:
        prod *= (1.0 - even) * (1.0 - odd) * (1.0 - odd);
        break;
      case ThetaKind::two:
        prod *= (1.0 - even) * (1.0 + even) * (1.0 + even);
        break;
    }
  }
  if (kind == ThetaKind::two) prod *= 2.0 * std::pow(q, 0.25);
  return prod;
}

double eval_series(ThetaKind kind, double q) {
  check_nome(q);
  if (q == 0.0) return kind == ThetaKind::two ? 0.0 : 1.0;
  const double log_q = std::log(q);
  CompensatedSum s;
  if (kind == ThetaKind::two) {
    for (int n = 1;; ++n) {
      const double t = std::exp(static_cast<double>(n * n - n) * log_q);
      s.add(t);
      if (t < 1e-18 * s.value()) break;
    }
    return 2.0 * std::pow(q, 0.25) * s.value();
  }
  s.add(1.0);
  for (int n = 1;; ++n) {
    const double t = 2.0 * std::exp(static_cast<double>(n) * n * log_q);
    s.add(kind == ThetaKind::four && (n % 2) ? -t : t);
    if (t < 1e-18) break;
  }
  return s.value();
}

QSeries build(const ThetaSpec& spec, const Exponent& max_exponent) {
  if (max_exponent.value() < 0.0) throw DomainError("negative order");
  std::vector<WeightedSeries> parts;
  parts.reserve(spec.terms().size());
  for (const auto& term : spec.terms()) {
    QSeries product = QSeries::unit();
    for (const auto& f : term.factors) {
      if (f.power == 0.0) continue;
      const double base_order =
          std::ceil(max_exponent.value() / f.scale.to_double()) + 1.0;
      QSeries factor =
          pow_real(series(f.kind, static_cast<std::size_t>(base_order)),
                   f.power);
      product = mul(product, rescale(factor, f.scale));
    }
    parts.push_back({term.coeff, std::move(product)});
  }
  return lincomb(parts).truncated_to_exponent(max_exponent);
}

QSeries build(const ThetaSpec& spec, std::size_t order) {
  return build(spec, Exponent(Rational(static_cast<std::int64_t>(order))));
}

ThetaSpec dual(const ThetaSpec& spec) {
  std::vector<ThetaTerm> terms;
  terms.reserve(spec.terms().size());
  for (const auto& term : spec.terms()) {
    ThetaTerm out;
    double log_norm = 0.0;
    for (const auto& f : term.factors) {
      ThetaFactor g = f;
      if (f.kind == ThetaKind::two) g.kind = ThetaKind::four;
      if (f.kind == ThetaKind::four) g.kind = ThetaKind::two;
      g.scale = f.scale.inverse();
      log_norm += f.power * std::log(f.scale.to_double());
      out.factors.push_back(g);
    }
    out.coeff = term.coeff * std::exp(-0.5 * log_norm);
    terms.push_back(std::move(out));
  }
  return ThetaSpec(spec.dim(), std::move(terms));
}

double jacobi_residual(ThetaKind kind, double t) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw DomainError("jacobi_residual requires t > 0");
  }
  ThetaKind partner = kind;
  if (kind == ThetaKind::two) partner = ThetaKind::four;
  if (kind == ThetaKind::four) partner = ThetaKind::two;
  const double pi = std::numbers::pi;
  const double lhs = eval_series(kind, std::exp(-pi / t));
  const double rhs = std::sqrt(t) * eval_series(partner, std::exp(-pi * t));
  return std::fabs(lhs - rhs);
}

double coeff_bound(double d, double l) {
  if (!(d >= 1.0)) throw DomainError("coeff_bound requires d >= 1");
  if (!(l >= 1.0)) throw DomainError("coeff_bound requires l >= 1");
  return polynomial_coeff_bound(d, l);
}

}  // namespace theta
}  // namespace dcpsf
