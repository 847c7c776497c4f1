#pragma once

// The dimensionally continued radial Fourier transform
//
//   f^(p) = 2 pi^{d/2} / Gamma(d/2) * int_0^inf f(r) 0F1(; d/2; -pi^2 p^2 r^2)
//           r^{d-1} dr,
//
// closed forms on Gaussian-polynomial mixtures, adaptive quadrature for
// everything else, and the radial Laplacian in d dimensions.

#include <cstddef>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "dcpsf/special.hpp"

namespace dcpsf {

/// c r^{2k} e^{-alpha r^2}
struct GaussTerm {
  double c = 1.0;
  int k = 0;
  double alpha = 1.0;

  friend bool operator==(const GaussTerm&, const GaussTerm&) = default;
};

/// Finite sum of GaussTerms. alpha = 0 is admitted so that the class is closed
/// under the Laplacian (polynomials), but transforms need alpha > 0.
class GaussPoly {
 public:
  GaussPoly() = default;
  explicit GaussPoly(std::vector<GaussTerm> terms);

  const std::vector<GaussTerm>& terms() const noexcept { return terms_; }
  double operator()(double r) const;
  /// Merges terms with equal (k, alpha) and drops zero coefficients.
  GaussPoly simplified() const;
  GaussPoly scaled(double factor) const;

  friend GaussPoly operator+(const GaussPoly& a, const GaussPoly& b);

 private:
  std::vector<GaussTerm> terms_;
};

/// |g(r)| <= scale * exp(-rate r^2) for all r >= 0.
struct DecayHint {
  double scale = 1.0;
  double rate = 1.0;
};

/// A radial function known only through point evaluations.
struct Sampled {
  std::function<double(double)> f;
  DecayHint decay;
  /// Envelope of the transform, needed to truncate sums over f^.
  std::optional<DecayHint> hat_decay;
};

using RadialFunction = std::variant<GaussPoly, Sampled>;

double evaluate(const RadialFunction& f, double r);

struct TransformSettings {
  double rel_tol = 1e-12;
  double abs_tol = 1e-15;
  std::size_t max_panels = 20000;
  /// Upper integration limit; derived from the decay bound when empty.
  std::optional<double> r_max;
  /// Initial panels per period 1/p of the kernel.
  double panels_per_oscillation = 2.0;
  /// Evaluate Gaussian terms with strong kernel cancellation on the
  /// steepest-descent path instead of the real axis.
  bool use_contour = true;
  /// Admit 0 < d < 1. Results carry no accuracy contract.
  bool experimental_low_dim = false;
};

struct TransformResult {
  double value = 0.0;
  double error = 0.0;
};

/// Exact transform of a Gaussian-polynomial mixture.
double ft_closed(const GaussPoly& f, double p, double d,
                 bool experimental_low_dim = false);

TransformResult ft_quadrature(const RadialFunction& f, double p, double d,
                              const TransformSettings& settings = {});

/// Delta_d^n f with Delta_d = d^2/dr^2 + (d-1)/r d/dr.
GaussPoly laplacian_d(const GaussPoly& f, double d, int n = 1);

/// |(Delta_d^n f)^(p) - (-1)^n (2 pi p)^{2n} f^(p)|, both from closed forms.
double eigen_residual(const GaussPoly& f, double p, double d, int n);

/// 2 pi^{d/2} / Gamma(d/2)
double radial_measure(double d);

}  // namespace dcpsf
