#pragma once

// Both sides of the summation formula
//
//   sum_l N_l f(sqrt(A_l)) = sum_l N*_l f^(sqrt(A*_l))
//
// for a generalized theta series and its dual, truncated under an explicit
// tail bound.

#include <cstddef>
#include <vector>

#include "dcpsf/theta.hpp"
#include "dcpsf/transform.hpp"

namespace dcpsf {

struct SummationOptions {
  /// Hard limit on the number of grid steps in either truncated series.
  std::size_t L_cap = 200000;
  /// PASS allows the residual this many times the combined error budget.
  double pass_multiplier = 10.0;
  bool keep_table = false;
};

struct TableRow {
  double A = 0.0;
  double N = 0.0;
  double value = 0.0;  // f(sqrt(A)) or f^(sqrt(A))
};

struct SideResult {
  double value = 0.0;
  std::size_t L_used = 0;
  double tail = 0.0;
  /// Sum of |N_l| times the transform error estimate at each shell.
  double transform_err = 0.0;
  /// sum |N_l g_l|, the scale for rounding estimates.
  double abs_sum = 0.0;
  std::vector<TableRow> table;
};

SideResult lhs_sum(const ThetaSpec& spec, const RadialFunction& f, double tol,
                   const SummationOptions& options = {});

SideResult rhs_sum(const ThetaSpec& spec, const RadialFunction& f, double tol,
                   const TransformSettings& settings = {},
                   const SummationOptions& options = {});

struct VerificationReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  std::size_t L_used = 0;
  std::size_t L_star_used = 0;
  double tail_lhs = 0.0;
  double tail_rhs = 0.0;
  double transform_err = 0.0;
  double rounding = 0.0;
  double tol = 0.0;
  bool pass = false;
  /// Set for inputs outside the proved setting (sampled functions on the
  /// transform side); such results carry no accuracy contract.
  bool experimental = false;
  std::vector<TableRow> per_term_table;
  std::vector<TableRow> per_term_table_dual;
};

VerificationReport verify(const ThetaSpec& spec, const RadialFunction& f,
                          double tol, const TransformSettings& settings = {},
                          const SummationOptions& options = {});

}  // namespace dcpsf
