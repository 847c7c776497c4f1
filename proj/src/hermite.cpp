#include "dcpsf/hermite.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "dcpsf/errors.hpp"
#include "dcpsf/numeric.hpp"
#include "dcpsf/quadrature.hpp"

namespace dcpsf {
namespace {

constexpr double kPi = std::numbers::pi;

// Runs the recurrence on unnormalized values and folds e^{-x^2/2} back in at
// the end, rescaling on the way so nothing overflows or underflows early.
void recurrence(int n_max, double x, std::vector<double>* all, double* last) {
  if (n_max < 0) throw DomainError("Hermite index must be >= 0");
  double log_scale = -0.5 * x * x - 0.25 * std::log(kPi);
  double prev = 0.0;
  double cur = 1.0;
  auto emit = [&](int n, double v) {
    double out = 0.0;
    if (log_scale > -700.0) {
      out = v * std::exp(log_scale);
    } else if (v != 0.0) {
      out = std::copysign(std::exp(std::log(std::fabs(v)) + log_scale), v);
    }
    if (all) (*all)[static_cast<std::size_t>(n)] = out;
    if (last && n == n_max) *last = out;
  };
  emit(0, cur);
  for (int n = 0; n < n_max; ++n) {
    const double next = std::sqrt(2.0 / (n + 1.0)) * x * cur -
                        std::sqrt(n / (n + 1.0)) * prev;
    prev = cur;
    cur = next;
    if (std::fabs(cur) > 1e150) {
      prev *= 1e-150;
      cur *= 1e-150;
      log_scale += 150.0 * std::log(10.0);
    }
    emit(n + 1, cur);
  }
}

}  // namespace

double hermite_h(int n, double x) {
  double out = 0.0;
  recurrence(n, x, nullptr, &out);
  return out;
}

std::vector<double> hermite_h_all(int n_max, double x) {
  std::vector<double> out(static_cast<std::size_t>(std::max(n_max, 0)) + 1);
  recurrence(n_max, x, &out, nullptr);
  return out;
}

double gaussian_hermite_coeff(double alpha, int n) {
  if (!(alpha > 0.0)) throw DomainError("gaussian_hermite_coeff needs alpha > 0");
  if (n < 0) throw DomainError("Hermite index must be >= 0");
  if (n % 2 == 1) return 0.0;
  const int j = n / 2;
  const double beta = 1.0 / (alpha + 0.5);
  const double gap = beta - 1.0;
  if (j > 0 && gap == 0.0) return 0.0;
  // log N_{2j} + log (2j)! = -log(pi)/4 - j log 2 + lgamma(2j+1)/2
  double log_mag = -0.25 * std::log(kPi) - j * std::log(2.0) +
                   0.5 * std::lgamma(2.0 * j + 1.0) - std::lgamma(j + 1.0) +
                   0.5 * std::log(kPi * beta);
  if (j > 0) log_mag += j * std::log(std::fabs(gap));
  const double sign = (gap < 0.0 && j % 2 == 1) ? -1.0 : 1.0;
  return sign * std::exp(log_mag);
}

double hermite_coeff_quadrature(const std::function<double(double)>& f, int n,
                                double abs_tol) {
  if (n < 0) throw DomainError("Hermite index must be >= 0");
  // Beyond the turning point sqrt(2n+1), h_n decays like a Gaussian; 12 more
  // units put it below 1e-30.
  const double x_max = std::sqrt(2.0 * n + 1.0) + 12.0;
  const auto pieces = static_cast<std::size_t>(std::ceil(2.0 * x_max / 0.5));
  std::vector<double> breaks;
  for (std::size_t i = 0; i <= pieces; ++i) {
    breaks.push_back(-x_max + 2.0 * x_max * static_cast<double>(i) /
                                  static_cast<double>(pieces));
  }
  QuadOptions opts;
  opts.abs_tol = 0.1 * abs_tol;
  opts.rel_tol = 1e-14;
  const QuadResult r = integrate(
      [&](double x) { return f(x) * hermite_h(n, x); }, breaks, opts);
  if (r.error > abs_tol) {
    throw ToleranceNotMet("Hermite coefficient quadrature", r.error);
  }
  return r.value;
}

double HermiteExpansion::operator()(double x) const {
  if (coeffs.empty()) return 0.0;
  const auto h = hermite_h_all(static_cast<int>(coeffs.size()) - 1, x);
  CompensatedSum s;
  for (std::size_t n = 0; n < coeffs.size(); ++n) s.add(coeffs[n] * h[n]);
  return s.value();
}

HermiteExpansion hermite_expand(const std::function<double(double)>& f,
                                int order, double abs_tol) {
  if (order < 0) throw DomainError("expansion order must be >= 0");
  HermiteExpansion e;
  for (int n = 0; n <= order; ++n) {
    e.coeffs.push_back(hermite_coeff_quadrature(f, n, abs_tol));
  }
  return e;
}

SpanFit gaussian_span_fit(const std::function<double(double)>& f,
                          std::span<const double> alphas,
                          const SpanFitOptions& options) {
  if (alphas.empty()) throw DomainError("span fit needs at least one alpha");
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (!(alphas[i] > 0.0)) throw DomainError("span fit alphas must be > 0");
    for (std::size_t j = 0; j < i; ++j) {
      if (alphas[i] == alphas[j]) throw DomainError("span fit alphas must be distinct");
    }
  }
  if (options.grid_points < alphas.size()) {
    throw DomainError("span fit needs more grid points than Gaussians");
  }
  const double alpha_min = *std::min_element(alphas.begin(), alphas.end());
  const double r_max =
      options.r_max > 0.0 ? options.r_max : std::sqrt(36.0 / alpha_min);

  const auto m = static_cast<Eigen::Index>(options.grid_points);
  const auto k = static_cast<Eigen::Index>(alphas.size());
  Eigen::MatrixXd a(m, k);
  Eigen::VectorXd b(m);
  const double h = r_max / static_cast<double>(m - 1);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double x = h * static_cast<double>(i);
    // Trapezoid weights approximate the L2 norm on [0, r_max].
    const double w = std::sqrt((i == 0 || i == m - 1) ? 0.5 * h : h);
    b(i) = w * f(x);
    for (Eigen::Index j = 0; j < k; ++j) {
      a(i, j) = w * std::exp(-alphas[static_cast<std::size_t>(j)] * x * x);
    }
  }

  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd s = svd.singularValues();
  const double s_max = s(0);
  const double s_min = s(s.size() - 1);
  const double condition = s_min > 0.0 ? s_max / s_min : INFINITY;
  if (!(condition <= options.max_condition)) {
    throw IllConditioned("Gaussian family is numerically degenerate (condition " +
                             std::to_string(condition) + ")",
                         condition);
  }
  const double lambda = options.regularization * s_max;
  Eigen::VectorXd filter(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    filter(i) = s(i) / (s(i) * s(i) + lambda * lambda);
  }
  const Eigen::VectorXd c =
      svd.matrixV() * filter.asDiagonal() * (svd.matrixU().transpose() * b);

  SpanFit fit;
  fit.coeffs.assign(c.data(), c.data() + c.size());
  fit.condition = condition;
  fit.r_max = r_max;
  const std::size_t check_points = 4 * options.grid_points;
  for (std::size_t i = 0; i <= check_points; ++i) {
    const double x = r_max * static_cast<double>(i) / static_cast<double>(check_points);
    CompensatedSum s_fit;
    for (std::size_t j = 0; j < alphas.size(); ++j) {
      s_fit.add(fit.coeffs[j] * std::exp(-alphas[j] * x * x));
    }
    fit.sup_error = std::max(fit.sup_error, std::fabs(f(x) - s_fit.value()));
  }
  return fit;
}

}  // namespace dcpsf
