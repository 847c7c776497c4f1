#include "dcpsf/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "dcpsf/errors.hpp"
#include "dcpsf/numeric.hpp"

namespace dcpsf {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Kronrod abscissae; odd indices are the Gauss nodes.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};

constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool final;
};

struct ByError {
  bool operator()(const Panel& x, const Panel& y) const {
    return x.error < y.error;
  }
};

}  // namespace

QuadResult gauss_kronrod21(const std::function<double(double)>& f, double a,
                           double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<double, 21> fv{};
  fv[10] = f(center);
  for (std::size_t j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    fv[j] = f(center - dx);
    fv[20 - j] = f(center + dx);
  }

  double kron = kWgk[10] * fv[10];
  double gauss = 0.0;
  double resabs = std::fabs(kron);
  for (std::size_t j = 0; j < 10; ++j) {
    const double pair = fv[j] + fv[20 - j];
    kron += kWgk[j] * pair;
    resabs += kWgk[j] * (std::fabs(fv[j]) + std::fabs(fv[20 - j]));
    if (j % 2 == 1) gauss += kWg[j / 2] * pair;
  }
  const double mean = 0.5 * kron;
  double resasc = kWgk[10] * std::fabs(fv[10] - mean);
  for (std::size_t j = 0; j < 10; ++j) {
    resasc += kWgk[j] * (std::fabs(fv[j] - mean) + std::fabs(fv[20 - j] - mean));
  }

  const double scale = std::fabs(half);
  kron *= half;
  gauss *= half;
  resabs *= scale;
  resasc *= scale;

  double err = std::fabs(kron - gauss);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  const double floor = 50.0 * kEps * resabs;
  QuadResult r;
  r.value = kron;
  r.panels = 1;
  r.roundoff_limited = err <= floor;
  r.error = std::max(err, floor);
  if (!std::isfinite(r.value)) {
    throw DomainError("integrand is not finite on [" + std::to_string(a) +
                      ", " + std::to_string(b) + "]");
  }
  return r;
}

QuadResult integrate(const std::function<double(double)>& f,
                     std::span<const double> breaks, const QuadOptions& opts) {
  if (breaks.size() < 2) throw DomainError("integrate needs two break points");
  std::priority_queue<Panel, std::vector<Panel>, ByError> open;
  std::vector<Panel> done;
  auto push = [&](double a, double b) {
    const QuadResult r = gauss_kronrod21(f, a, b);
    const bool tiny = std::fabs(b - a) <=
                      64.0 * kEps * std::max(std::fabs(a), std::fabs(b));
    Panel p{a, b, r.value, r.error, r.roundoff_limited || tiny};
    if (p.final) {
      done.push_back(p);
    } else {
      open.push(p);
    }
  };
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i + 1] > breaks[i])) {
      throw DomainError("break points must be strictly increasing");
    }
    push(breaks[i], breaks[i + 1]);
  }

  auto totals = [&](double& value, double& error) {
    std::vector<Panel> all(done);
    auto copy = open;
    while (!copy.empty()) {
      all.push_back(copy.top());
      copy.pop();
    }
    std::sort(all.begin(), all.end(),
              [](const Panel& x, const Panel& y) { return x.a < y.a; });
    CompensatedSum v, e;
    for (const auto& p : all) {
      v.add(p.value);
      e.add(p.error);
    }
    value = v.value();
    error = e.value();
  };

  std::size_t panels = breaks.size() - 1;
  double value = 0.0, error = 0.0;
  while (true) {
    totals(value, error);
    const double target = std::max(opts.abs_tol, opts.rel_tol * std::fabs(value));
    if (error <= target) break;
    if (open.empty()) {
      return {value, error, panels, true};
    }
    if (panels >= opts.max_panels) {
      throw ToleranceNotMet("quadrature panel budget of " +
                                std::to_string(opts.max_panels) +
                                " exhausted; error estimate " +
                                std::to_string(error),
                            error);
    }
    // Split the worst few panels before recomputing the totals.
    const std::size_t batch = std::max<std::size_t>(1, open.size() / 8);
    for (std::size_t i = 0; i < batch && !open.empty(); ++i) {
      const Panel p = open.top();
      open.pop();
      const double mid = 0.5 * (p.a + p.b);
      push(p.a, mid);
      push(mid, p.b);
      ++panels;
    }
  }
  return {value, error, panels, false};
}

QuadResult integrate(const std::function<double(double)>& f, double a,
                     double b, const QuadOptions& opts) {
  const double breaks[] = {a, b};
  return integrate(f, breaks, opts);
}

}  // namespace dcpsf
