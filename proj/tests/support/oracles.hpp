#pragma once

// Independent reference computations used only by the tests.

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

// Counts integer vectors x in Z^dim with |x|^2 = n for n = 0..max_norm, by
// enumerating the box |x_i| <= sqrt(max_norm). `keep` filters the vectors.
inline std::vector<double> lattice_counts(
    int dim, int max_norm,
    const std::function<bool(const std::vector<int>&)>& keep =
        [](const std::vector<int>&) { return true; }) {
  const int r = static_cast<int>(std::floor(std::sqrt(max_norm)));
  std::vector<double> counts(static_cast<std::size_t>(max_norm) + 1, 0.0);
  std::vector<int> x(static_cast<std::size_t>(dim), -r);
  while (true) {
    int norm = 0;
    for (int xi : x) norm += xi * xi;
    if (norm <= max_norm && keep(x)) counts[static_cast<std::size_t>(norm)] += 1;
    int i = 0;
    while (i < dim && x[static_cast<std::size_t>(i)] == r) {
      x[static_cast<std::size_t>(i)] = -r;
      ++i;
    }
    if (i == dim) break;
    ++x[static_cast<std::size_t>(i)];
  }
  return counts;
}

inline bool even_sum(const std::vector<int>& x) {
  int s = 0;
  for (int xi : x) s += xi;
  return s % 2 == 0;
}

// Composite Simpson rule on [a, b] with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a,
                      double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

}  // namespace oracle

namespace oracle {

// sum over x in (Z + shift)^dim with |x|^2 <= max_norm of weight(x) g(|x|^2).
inline double lattice_sum(
    int dim, double max_norm, double shift,
    const std::function<double(double)>& g,
    const std::function<double(const std::vector<int>&)>& weight =
        [](const std::vector<int>&) { return 1.0; }) {
  const int r = static_cast<int>(std::ceil(std::sqrt(max_norm))) + 1;
  std::vector<int> x(static_cast<std::size_t>(dim), -r);
  double total = 0.0;
  while (true) {
    double norm = 0.0;
    for (int xi : x) norm += (xi + shift) * (xi + shift);
    if (norm <= max_norm) total += weight(x) * g(norm);
    int i = 0;
    while (i < dim && x[static_cast<std::size_t>(i)] == r) {
      x[static_cast<std::size_t>(i)] = -r;
      ++i;
    }
    if (i == dim) break;
    ++x[static_cast<std::size_t>(i)];
  }
  return total;
}

}  // namespace oracle
