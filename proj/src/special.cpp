#include "dcpsf/special.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "dcpsf/errors.hpp"
#include "dcpsf/numeric.hpp"

namespace dcpsf {
namespace {

constexpr double kPi = std::numbers::pi;

// Sum of the defining series with double-double accumulation. The terms reach
// about e^{2 sqrt|z|} before the alternating sum settles, so plain doubles
// would lose that many digits.
double hyp0f1_series_dd(double a, double z) {
  DoubleDouble term(1.0);
  DoubleDouble sum(1.0);
  double biggest = 1.0;
  const double root = std::sqrt(std::fabs(z));
  for (int n = 0; n < 100000; ++n) {
    const DoubleDouble denom = DoubleDouble::two_sum(a, static_cast<double>(n)) *
                               DoubleDouble(static_cast<double>(n + 1));
    term = term * DoubleDouble(z) / denom;
    sum = sum + term;
    const double mag = std::fabs(term.hi);
    biggest = std::max(biggest, mag);
    if (n > root && mag <= 1e-33 * biggest) break;
  }
  return sum.to_double();
}

double hyp0f1_series_positive(double a, double z) {
  CompensatedSum sum;
  sum.add(1.0);
  double term = 1.0;
  for (int n = 0; n < 100000; ++n) {
    term *= z / ((a + n) * (n + 1));
    sum.add(term);
    if (term <= 1e-17 * sum.value()) break;
    if (!std::isfinite(term)) return std::numeric_limits<double>::infinity();
  }
  return sum.value();
}

}  // namespace

double gamma_fn(double x) {
  if (!(x > 0.0)) throw DomainError("gamma_fn requires x > 0");
  return std::tgamma(x);
}

double bessel_j_asymptotic(double nu, double x) {
  if (!(x > 0.0)) throw DomainError("bessel_j_asymptotic requires x > 0");
  const double mu = 4.0 * nu * nu;
  double p = 1.0, q = 0.0;
  double term = 1.0;
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (k * 8.0 * x);
    const double mag = std::fabs(term);
    if (mag > prev) break;  // asymptotic series has started to diverge
    // i^k pattern: k = 1 -> +Q, k = 2 -> -P, k = 3 -> -Q, k = 4 -> +P.
    switch (k % 4) {
      case 1:
        q += term;
        break;
      case 2:
        p -= term;
        break;
      case 3:
        q -= term;
        break;
      default:
        p += term;
        break;
    }
    if (mag < 1e-17 * std::fabs(p)) break;
    prev = mag;
  }
  const double chi = x - (0.5 * nu + 0.25) * kPi;
  return std::sqrt(2.0 / (kPi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

std::complex<double> hankel1_scaled_asymptotic(double nu,
                                               std::complex<double> w) {
  using C = std::complex<double>;
  const double mu = 4.0 * nu * nu;
  const C iw = C(0.0, 1.0) / w;
  C sum = 1.0;
  C term = 1.0;
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= iw * ((mu - odd * odd) / (k * 8.0));
    const double mag = std::abs(term);
    if (mag > prev) break;
    sum += term;
    if (mag < 1e-17 * std::abs(sum)) break;
    prev = mag;
  }
  const C phase = std::exp(C(0.0, -(0.5 * nu + 0.25) * kPi));
  return std::sqrt(C(2.0 / kPi) / w) * phase * sum;
}

double hyp0f1(double a, double z) {
  if (!(a > 0.0)) throw DomainError("hyp0f1 requires a > 0");
  if (std::isnan(z)) throw DomainError("hyp0f1 of NaN");
  if (z == 0.0) return 1.0;
  if (z > 0.0) return hyp0f1_series_positive(a, z);
  const double nu = a - 1.0;
  const double x = 2.0 * std::sqrt(-z);
  // The expansion is only useful once x dominates nu^2.
  if (-z <= kHyp0f1Switch || nu * nu > 0.5 * x) {
    return hyp0f1_series_dd(a, z);
  }
  // 0F1(; a; -x^2/4) = Gamma(a) (x/2)^{1-a} J_{a-1}(x)
  const double scale = std::exp(std::lgamma(a) - nu * std::log(0.5 * x));
  return scale * bessel_j_asymptotic(nu, x);
}

}  // namespace dcpsf
