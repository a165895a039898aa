#pragma once

#include <string_view>
#include <vector>

namespace oneshot::lp {

enum class VarBound { NonNegative, Free };

// maximize objective . x  subject to  rows * x <= rhs,
// x_j >= 0 unless bounds[j] == Free.
struct LinearProgram {
  std::vector<double> objective;
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  std::vector<VarBound> bounds;  // empty means all NonNegative

  int num_vars() const { return static_cast<int>(objective.size()); }
  int num_constraints() const { return static_cast<int>(rows.size()); }

  // Appends a constraint row given as (index, coefficient) pairs.
  void add_row(const std::vector<std::pair<int, double>>& terms, double bound);
};

enum class Status { Optimal, Infeasible, Unbounded };

std::string_view to_string(Status s);

struct Solution {
  Status status = Status::Infeasible;
  std::vector<double> x;
  double objective_value = 0.0;
  // Dual multipliers of the rows (>= 0 at optimality); the dual program is
  // minimize rhs . y  s.t.  rows^T y >= objective (== on free columns), y >= 0.
  std::vector<double> duals;
  int pivots = 0;
};

struct Options {
  double pivot_tol = 1e-10;
  double feasibility_tol = 1e-9;
  int max_pivots = 0;  // 0 means 50000 + 100 * (rows + cols)
};

// Two-phase dense tableau simplex with Bland's anti-cycling rule. Throws
// ValidationError for malformed programs and InternalError if the pivot cap
// is exceeded.
Solution solve(const LinearProgram& lp, const Options& opts = {});

// Largest violation of rows * x <= rhs and of the variable bounds.
double primal_infeasibility(const LinearProgram& lp, const std::vector<double>& x);
// Largest violation of the dual constraints for the given multipliers.
double dual_infeasibility(const LinearProgram& lp, const std::vector<double>& y);
// max over rows |y_i (rhs_i - a_i x)| and over columns |x_j (a^T y - c)_j|.
double complementary_slackness_residual(const LinearProgram& lp, const Solution& sol);

}  // namespace oneshot::lp
