#include "dcpsf/transform.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <string>
#include <utility>

#include "dcpsf/errors.hpp"
#include "dcpsf/numeric.hpp"
#include "dcpsf/quadrature.hpp"

namespace dcpsf {
namespace {

constexpr double kPi = std::numbers::pi;

// Below this value of pi^2 p^2 / alpha the real-axis integral loses few
// digits to cancellation; above it the contour path is used. It also keeps
// |w| >= 20 on the path, where the Hankel expansion reaches full precision.
constexpr double kContourThreshold = 10.0;

void check_dimension(double d, bool experimental) {
  if (!std::isfinite(d) || d <= 0.0) {
    throw DomainError("dimension parameter must be positive");
  }
  if (d < 1.0 && !experimental) {
    throw DomainError("d < 1 requires the experimental low-dimension flag");
  }
}

void check_p(double p) {
  if (!std::isfinite(p) || p < 0.0) throw DomainError("p must be >= 0");
}

void check_transformable(const GaussTerm& t) {
  if (t.c != 0.0 && !(t.alpha > 0.0)) {
    throw DomainError("transform of a Gaussian term needs alpha > 0");
  }
}

// log of int_R^inf r^{m-1} e^{-alpha r^2} dr, bounded through the convexity
// of alpha r^2 - (m-1) log r beyond its minimum. Requires 2 alpha R^2 > m - 1.
double log_gauss_tail(double m, double alpha, double r) {
  const double slope = 2.0 * alpha * r - (m - 1.0) / r;
  if (slope <= 0.0) return std::numeric_limits<double>::infinity();
  return (m - 1.0) * std::log(r) - alpha * r * r - std::log(slope);
}

// Smallest R (on a geometric ladder) whose bound drops below e^{log_target}.
double gauss_cutoff(double m, double alpha, double log_target) {
  double r = std::sqrt(std::max(1.0, m / alpha));
  while (log_gauss_tail(m, alpha, r) > log_target) r *= 1.05;
  return r;
}

// int_0^inf r^{m-1} e^{-alpha r^2} dr
double gauss_moment(double m, double alpha) {
  return 0.5 * std::exp(std::lgamma(0.5 * m) - 0.5 * m * std::log(alpha));
}

// Generalized Laguerre L_n^{(b)}(x) via the three-term recurrence.
double laguerre(int n, double b, double x) {
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 + b - x;
  for (int j = 1; j < n; ++j) {
    const double next = ((2.0 * j + 1.0 + b - x) * cur - (j + b) * prev) / (j + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

// k! u^k L_k^{(b)}(x) in double-double.
constexpr int kGroupedMaxK = 60;

DoubleDouble laguerre_poly_dd(int k, double b, double x, double u) {
  DoubleDouble scale(1.0);
  for (int j = 1; j <= k; ++j) scale = scale * DoubleDouble(static_cast<double>(j)) * DoubleDouble(u);
  if (k == 0) return scale;
  DoubleDouble prev(1.0);
  DoubleDouble cur = DoubleDouble(1.0) + DoubleDouble(b) - DoubleDouble(x);
  for (int j = 1; j < k; ++j) {
    const DoubleDouble next =
        ((DoubleDouble(2.0 * j + 1.0) + DoubleDouble(b) - DoubleDouble(x)) * cur -
         (DoubleDouble(static_cast<double>(j)) + DoubleDouble(b)) * prev) /
        DoubleDouble(j + 1.0);
    prev = cur;
    cur = next;
  }
  return scale * cur;
}

// Transform of c r^{2k} e^{-alpha r^2} on the path r = i pi p / alpha + s,
// where the Gaussian and the kernel's oscillation combine into
// e^{-alpha s^2 - pi^2 p^2 / alpha}. The vertical leg from 0 contributes a
// purely imaginary amount and drops out of the real part.
TransformResult contour_term(const GaussTerm& t, double p, double d,
                             const TransformSettings& settings) {
  const double a = 0.5 * d;
  const double nu = a - 1.0;
  const double mu = 2.0 * t.k + a;
  const double b = 2.0 * kPi * p;
  const double y = kPi * p / t.alpha;
  const double log_pref = std::log(2.0) + a * std::log(kPi) -
                          nu * std::log(kPi * p) - kPi * kPi * p * p / t.alpha;
  const double pref = t.c * std::exp(log_pref);
  if (pref == 0.0) return {0.0, 0.0};

  auto integrand = [&](double s) {
    const std::complex<double> r(s, y);
    const std::complex<double> h = hankel1_scaled_asymptotic(nu, b * r);
    return std::exp(-t.alpha * s * s) * std::real(std::pow(r, mu) * h);
  };
  // |integrand| <= e^{-alpha s^2} |r|^mu; cut where that is 1e-20 of its
  // value at s = 0.
  double s_max = std::sqrt(45.0 / t.alpha);
  while (-t.alpha * s_max * s_max +
             0.5 * mu * std::log1p((s_max * s_max) / (y * y)) >
         std::log(1e-20)) {
    s_max *= 1.1;
  }
  QuadOptions opts;
  opts.rel_tol = settings.rel_tol;
  opts.abs_tol = settings.abs_tol / std::fabs(pref);
  opts.max_panels = settings.max_panels;
  const double breaks[] = {0.0, 0.25 * s_max, 0.5 * s_max, s_max};
  const QuadResult q = integrate(integrand, breaks, opts);
  const double tail = 1e-20 * std::pow(y, mu) * s_max;
  return {pref * q.value, std::fabs(pref) * (q.error + tail)};
}

TransformResult real_axis(const std::function<double(double)>& f,
                          double envelope_c, double envelope_alpha,
                          double envelope_m, double mass, double p, double d,
                          const TransformSettings& settings) {
  const double a = 0.5 * d;
  const double pref = radial_measure(d);
  const double target =
      0.1 * std::min(settings.abs_tol, settings.rel_tol * pref * mass);
  double r_max = 0.0;
  double tail = 0.0;
  if (settings.r_max) {
    r_max = *settings.r_max;
    if (!(r_max > 0.0)) throw DomainError("r_max must be positive");
    const double lt = log_gauss_tail(envelope_m, envelope_alpha, r_max);
    tail = pref * envelope_c * std::exp(lt);
  } else if (envelope_c > 0.0) {
    const double log_target = std::log(target / (pref * envelope_c));
    r_max = gauss_cutoff(envelope_m, envelope_alpha, log_target);
    tail = pref * envelope_c *
           std::exp(log_gauss_tail(envelope_m, envelope_alpha, r_max));
  } else {
    return {0.0, 0.0};
  }

  const double z_scale = -kPi * kPi * p * p;
  auto integrand = [&](double r) {
    if (r == 0.0) return d == 1.0 ? f(0.0) : 0.0;
    return f(r) * hyp0f1(a, z_scale * r * r) * std::pow(r, d - 1.0);
  };

  std::vector<double> breaks{0.0};
  std::size_t pieces = 8;
  if (p > 0.0) {
    const double width = 1.0 / (p * settings.panels_per_oscillation);
    pieces = std::max<std::size_t>(
        pieces, static_cast<std::size_t>(std::ceil(r_max / width)));
  }
  pieces = std::min(pieces, std::max<std::size_t>(1, settings.max_panels / 4));
  for (std::size_t i = 1; i <= pieces; ++i) {
    breaks.push_back(r_max * static_cast<double>(i) / static_cast<double>(pieces));
  }

  QuadOptions opts;
  opts.rel_tol = settings.rel_tol;
  opts.abs_tol = settings.abs_tol / pref;
  opts.max_panels = settings.max_panels;
  const QuadResult q = integrate(integrand, breaks, opts);
  return {pref * q.value, pref * q.error + tail};
}

}  // namespace

GaussPoly::GaussPoly(std::vector<GaussTerm> terms) : terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    if (!std::isfinite(t.c)) throw DomainError("non-finite Gaussian coefficient");
    if (t.k < 0) throw DomainError("Gaussian term power k must be >= 0");
    if (!std::isfinite(t.alpha) || t.alpha < 0.0) {
      throw DomainError("Gaussian exponent alpha must be >= 0");
    }
  }
}

double GaussPoly::operator()(double r) const {
  CompensatedSum s;
  const double r2 = r * r;
  for (const auto& t : terms_) {
    s.add(t.c * std::pow(r2, t.k) * std::exp(-t.alpha * r2));
  }
  return s.value();
}

GaussPoly GaussPoly::simplified() const {
  std::map<std::pair<double, int>, CompensatedSum> merged;
  std::vector<std::pair<double, int>> order;
  for (const auto& t : terms_) {
    const auto key = std::make_pair(t.alpha, t.k);
    if (!merged.contains(key)) order.push_back(key);
    merged[key].add(t.c);
  }
  std::vector<GaussTerm> out;
  for (const auto& key : order) {
    const double c = merged[key].value();
    if (c != 0.0) out.push_back({c, key.second, key.first});
  }
  return GaussPoly(std::move(out));
}

GaussPoly GaussPoly::scaled(double factor) const {
  std::vector<GaussTerm> out = terms_;
  for (auto& t : out) t.c *= factor;
  return GaussPoly(std::move(out));
}

GaussPoly operator+(const GaussPoly& a, const GaussPoly& b) {
  std::vector<GaussTerm> out = a.terms_;
  out.insert(out.end(), b.terms_.begin(), b.terms_.end());
  return GaussPoly(std::move(out));
}

double evaluate(const RadialFunction& f, double r) {
  return std::visit(
      [r](const auto& g) -> double {
        if constexpr (std::is_same_v<std::decay_t<decltype(g)>, GaussPoly>) {
          return g(r);
        } else {
          return g.f(r);
        }
      },
      f);
}

double radial_measure(double d) {
  return 2.0 * std::pow(kPi, 0.5 * d) / gamma_fn(0.5 * d);
}

double ft_closed(const GaussPoly& f, double p, double d,
                 bool experimental_low_dim) {
  check_dimension(d, experimental_low_dim);
  check_p(p);
  const double a = 0.5 * d;
  // (-d/dalpha)^k (pi/alpha)^a e^{-pi^2 p^2/alpha}
  //   = k! u^k L_k^{(a-1)}(pi^2 p^2 u) (pi u)^a e^{-pi^2 p^2 u},  u = 1/alpha
  // Terms sharing alpha share the factor (pi u)^a e^{-x}; their polynomial
  // parts are summed in double-double, since Laplacians of Gaussian mixtures
  // cancel to many digits there.
  std::map<double, DoubleDouble> groups;
  CompensatedSum s;
  for (const auto& t : f.terms()) {
    check_transformable(t);
    if (t.c == 0.0) continue;
    const double u = 1.0 / t.alpha;
    const double x = kPi * kPi * p * p * u;
    if (t.k <= kGroupedMaxK) {
      groups[t.alpha] = groups[t.alpha] + DoubleDouble(t.c) * laguerre_poly_dd(t.k, a - 1.0, x, u);
      continue;
    }
    const double log_mag = std::lgamma(t.k + 1.0) + t.k * std::log(u) +
                           a * std::log(kPi * u) - x;
    s.add(t.c * laguerre(t.k, a - 1.0, x) * std::exp(log_mag));
  }
  for (const auto& [alpha, poly] : groups) {
    const double u = 1.0 / alpha;
    const double x = kPi * kPi * p * p * u;
    s.add(poly.to_double() * std::exp(a * std::log(kPi * u) - x));
  }
  return s.value();
}

TransformResult ft_quadrature(const RadialFunction& f, double p, double d,
                              const TransformSettings& settings) {
  check_dimension(d, settings.experimental_low_dim);
  check_p(p);
  if (!(settings.rel_tol > 0.0) || !(settings.abs_tol > 0.0)) {
    throw DomainError("quadrature tolerances must be positive");
  }

  if (const auto* sampled = std::get_if<Sampled>(&f)) {
    if (!sampled->f) throw DomainError("sampled function without evaluator");
    const DecayHint& h = sampled->decay;
    if (!(h.scale >= 0.0) || !(h.rate > 0.0)) {
      throw DomainError("decay hint needs scale >= 0 and rate > 0");
    }
    return real_axis(sampled->f, h.scale, h.rate, d,
                     h.scale * gauss_moment(d, h.rate), p, d, settings);
  }

  const auto& g = std::get<GaussPoly>(f);
  TransformResult total;
  std::vector<GaussTerm> rest;
  for (const auto& t : g.terms()) {
    check_transformable(t);
    if (t.c == 0.0) continue;
    if (settings.use_contour && p > 0.0 &&
        kPi * kPi * p * p / t.alpha >= kContourThreshold) {
      const TransformResult r = contour_term(t, p, d, settings);
      total.value += r.value;
      total.error += r.error;
    } else {
      rest.push_back(t);
    }
  }
  if (rest.empty()) return total;

  // One envelope c r^{m-1} e^{-alpha r^2} dominating every remaining term for
  // r >= 1: smallest alpha, largest power.
  double env_alpha = rest.front().alpha;
  double env_m = 0.0;
  double env_c = 0.0;
  double mass = 0.0;
  for (const auto& t : rest) {
    env_alpha = std::min(env_alpha, t.alpha);
    env_m = std::max(env_m, 2.0 * t.k + d);
    env_c += std::fabs(t.c);
    mass += std::fabs(t.c) * gauss_moment(2.0 * t.k + d, t.alpha);
  }
  const GaussPoly remaining(rest);
  const TransformResult r = real_axis(remaining, env_c, env_alpha, env_m, mass,
                                      p, d, settings);
  total.value += r.value;
  total.error += r.error;
  return total;
}

GaussPoly laplacian_d(const GaussPoly& f, double d, int n) {
  if (n < 0) throw DomainError("laplacian_d repetitions must be >= 0");
  GaussPoly cur = f.simplified();
  for (int rep = 0; rep < n; ++rep) {
    std::vector<GaussTerm> out;
    for (const auto& t : cur.terms()) {
      const double k = t.k;
      if (t.k > 0) out.push_back({t.c * 2.0 * k * (2.0 * k + d - 2.0), t.k - 1, t.alpha});
      if (t.alpha != 0.0) {
        out.push_back({-t.c * 2.0 * t.alpha * (4.0 * k + d), t.k, t.alpha});
        out.push_back({t.c * 4.0 * t.alpha * t.alpha, t.k + 1, t.alpha});
      }
    }
    cur = GaussPoly(std::move(out)).simplified();
  }
  return cur;
}

double eigen_residual(const GaussPoly& f, double p, double d, int n) {
  if (!(d > 1.0)) throw DomainError("eigen_residual requires d > 1");
  if (n < 1) throw DomainError("eigen_residual requires n >= 1");
  const double lhs = ft_closed(laplacian_d(f, d, n), p, d);
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  const double rhs = sign * std::pow(2.0 * kPi * p, 2 * n) * ft_closed(f, p, d);
  return std::fabs(lhs - rhs);
}

}  // namespace dcpsf
