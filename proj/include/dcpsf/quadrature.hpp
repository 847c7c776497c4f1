#pragma once

// Globally adaptive Gauss-Kronrod (10/21) integration on finite intervals.

#include <cstddef>
#include <functional>
#include <span>

namespace dcpsf {

struct QuadOptions {
  double abs_tol = 1e-13;
  double rel_tol = 1e-12;
  std::size_t max_panels = 20000;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t panels = 0;
  /// Further subdivision could not lower the error: the remaining estimate is
  /// dominated by rounding in the integrand.
  bool roundoff_limited = false;
};

/// One G10/K21 rule on [a, b]; error follows the QUADPACK heuristic.
QuadResult gauss_kronrod21(const std::function<double(double)>& f, double a,
                           double b);

/// Integrates f over [breaks.front(), breaks.back()], starting from the panels
/// given by consecutive break points and repeatedly bisecting the panel with
/// the largest error estimate. Throws ToleranceNotMet when the panel budget is
/// spent first.
QuadResult integrate(const std::function<double(double)>& f,
                     std::span<const double> breaks, const QuadOptions& opts);

QuadResult integrate(const std::function<double(double)>& f, double a,
                     double b, const QuadOptions& opts);

}  // namespace dcpsf
