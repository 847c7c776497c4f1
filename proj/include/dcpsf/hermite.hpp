#pragma once

// Hermite functions, Hermite coefficients of Gaussians, and least-squares
// approximation of even functions from a finite Gaussian family.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace dcpsf {

/// h_n(x) = e^{-x^2/2} H_n(x) / sqrt(sqrt(pi) 2^n n!), by the normalized
/// three-term recurrence.
double hermite_h(int n, double x);

/// h_0(x) .. h_{n_max}(x) in one pass.
std::vector<double> hermite_h_all(int n_max, double x);

/// a_n = int e^{-alpha x^2} h_n(x) dx. With beta = 1/(alpha + 1/2):
///   a_{2j} = N_{2j} sqrt(pi beta) (beta - 1)^j (2j)! / j!,   a_{2j+1} = 0.
double gaussian_hermite_coeff(double alpha, int n);

/// int f h_n over the window where h_n is above underflow. f must be bounded.
double hermite_coeff_quadrature(const std::function<double(double)>& f, int n,
                                double abs_tol = 1e-11);

struct HermiteExpansion {
  std::vector<double> coeffs;

  std::size_t order() const noexcept {
    return coeffs.empty() ? 0 : coeffs.size() - 1;
  }
  double operator()(double x) const;
};

HermiteExpansion hermite_expand(const std::function<double(double)>& f,
                                int order, double abs_tol = 1e-11);

struct SpanFitOptions {
  /// Fit window [0, r_max]; derived from the smallest alpha when <= 0.
  double r_max = 0.0;
  std::size_t grid_points = 600;
  /// Tikhonov parameter relative to the largest singular value.
  double regularization = 1e-13;
  /// Fits whose design matrix is worse conditioned than this are refused.
  double max_condition = 1e15;
};

struct SpanFit {
  std::vector<double> coeffs;
  double sup_error = 0.0;
  double condition = 0.0;
  double r_max = 0.0;
};

/// Fits f(x) ~ sum_i c_i e^{-alpha_i x^2} on [0, r_max]. Throws
/// IllConditioned when the family is numerically degenerate.
SpanFit gaussian_span_fit(const std::function<double(double)>& f,
                          std::span<const double> alphas,
                          const SpanFitOptions& options = {});

}  // namespace dcpsf
