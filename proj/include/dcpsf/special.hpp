#pragma once

// Special functions behind the radial Fourier transform.

#include <complex>

namespace dcpsf {

/// Gamma function for x > 0.
double gamma_fn(double x);

/// Confluent hypergeometric limit function 0F1(; a; z) for a > 0.
double hyp0f1(double a, double z);

/// Above this |z| the negative axis is evaluated through the Bessel
/// asymptotic expansion instead of the defining series.
inline constexpr double kHyp0f1Switch = 400.0;

/// J_nu(x) for large x > 0 from the Hankel asymptotic expansion.
double bessel_j_asymptotic(double nu, double x);

/// H^(1)_nu(w) e^{-iw} from the Hankel asymptotic expansion, for |w| large and
/// -pi/2 < arg w < pi. The exponential factor is left to the caller so that it
/// can be combined with other exponentials before evaluation.
std::complex<double> hankel1_scaled_asymptotic(double nu,
                                               std::complex<double> w);

}  // namespace dcpsf
