#include "oneshot/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "oneshot/errors.hpp"

namespace oneshot::lp {

void LinearProgram::add_row(const std::vector<std::pair<int, double>>& terms, double bound) {
  std::vector<double> row(objective.size(), 0.0);
  for (const auto& [j, a] : terms) row.at(j) += a;
  rows.push_back(std::move(row));
  rhs.push_back(bound);
}

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Optimal: return "optimal";
    case Status::Infeasible: return "infeasible";
    case Status::Unbounded: return "unbounded";
  }
  return "unknown";
}

namespace {

void validate(const LinearProgram& lp) {
  const std::size_t n = lp.objective.size();
  if (lp.rows.size() != lp.rhs.size()) throw ValidationError("LP: rows and rhs differ in length");
  if (!lp.bounds.empty() && lp.bounds.size() != n) throw ValidationError("LP: bounds length mismatch");
  auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(lp.objective.begin(), lp.objective.end(), finite))
    throw ValidationError("LP: non-finite objective coefficient");
  if (!std::all_of(lp.rhs.begin(), lp.rhs.end(), finite)) throw ValidationError("LP: non-finite rhs");
  for (const auto& row : lp.rows) {
    if (row.size() != n) throw ValidationError("LP: constraint row has wrong length");
    if (!std::all_of(row.begin(), row.end(), finite)) throw ValidationError("LP: non-finite coefficient");
  }
}

bool is_free(const LinearProgram& lp, std::size_t j) {
  return !lp.bounds.empty() && lp.bounds[j] == VarBound::Free;
}

// Dense tableau in the standard form  T x = rhs, x >= 0 over all columns.
class Tableau {
 public:
  Tableau(int rows, int cols) : m_(rows), n_(cols), t_(rows * (cols + 1), 0.0) {}

  double& at(int i, int j) { return t_[i * (n_ + 1) + j]; }
  double at(int i, int j) const { return t_[i * (n_ + 1) + j]; }
  double& rhs(int i) { return at(i, n_); }
  double rhs(int i) const { return at(i, n_); }
  int rows() const { return m_; }
  int cols() const { return n_; }

  std::vector<int> basis;
  std::vector<double> reduced;  // c_j - c_B B^{-1} a_j

  void set_costs(const std::vector<double>& cost) {
    reduced = cost;
    for (int i = 0; i < m_; ++i) {
      const double cb = cost[basis[i]];
      if (cb == 0.0) continue;
      for (int j = 0; j < n_; ++j) reduced[j] -= cb * at(i, j);
    }
  }

  void pivot(int r, int c) {
    const double inv = 1.0 / at(r, c);
    for (int j = 0; j <= n_; ++j) at(r, j) *= inv;
    at(r, c) = 1.0;
    for (int i = 0; i < m_; ++i) {
      if (i == r) continue;
      const double f = at(i, c);
      if (f == 0.0) continue;
      for (int j = 0; j <= n_; ++j) at(i, j) -= f * at(r, j);
      at(i, c) = 0.0;
    }
    const double f = reduced[c];
    if (f != 0.0) {
      for (int j = 0; j < n_; ++j) reduced[j] -= f * at(r, j);
      reduced[c] = 0.0;
    }
    basis[r] = c;
  }

 private:
  int m_, n_;
  std::vector<double> t_;
};

enum class PhaseResult { Optimal, Unbounded };

// Primal simplex with Bland's rule over columns not marked excluded.
PhaseResult run_phase(Tableau& tab, const std::vector<char>& excluded, const Options& opts, int& pivots,
                      int max_pivots) {
  for (;;) {
    int enter = -1;
    for (int j = 0; j < tab.cols(); ++j) {
      if (excluded[j]) continue;
      if (tab.reduced[j] > opts.pivot_tol) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return PhaseResult::Optimal;

    int leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < tab.rows(); ++i) {
      const double a = tab.at(i, enter);
      if (a <= opts.pivot_tol) continue;
      const double ratio = std::max(0.0, tab.rhs(i)) / a;
      const bool better = ratio < best_ratio - 1e-12;
      const bool tie = !better && ratio <= best_ratio + 1e-12;
      if (better || (tie && tab.basis[i] < tab.basis[leave])) {
        best_ratio = std::min(best_ratio, ratio);
        leave = i;
      }
    }
    if (leave < 0) return PhaseResult::Unbounded;
    if (++pivots > max_pivots) throw InternalError("simplex pivot cap exceeded (" + std::to_string(max_pivots) + ")");
    tab.pivot(leave, enter);
  }
}

}  // namespace

Solution solve(const LinearProgram& lp, const Options& opts) {
  validate(lp);
  const int n = lp.num_vars();
  const int m = lp.num_constraints();

  // Column layout: split structural columns, then one slack per row, then
  // one artificial per row whose rhs is negative.
  std::vector<int> pos_col(n), neg_col(n, -1);
  int cols = 0;
  for (int j = 0; j < n; ++j) {
    pos_col[j] = cols++;
    if (is_free(lp, j)) neg_col[j] = cols++;
  }
  const int slack0 = cols;
  cols += m;
  std::vector<int> art_col(m, -1);
  std::vector<double> sign(m, 1.0);
  for (int i = 0; i < m; ++i) {
    if (lp.rhs[i] < 0.0) {
      sign[i] = -1.0;
      art_col[i] = cols++;
    }
  }

  Tableau tab(m, cols);
  tab.basis.assign(m, -1);
  for (int i = 0; i < m; ++i) {
    const double s = sign[i];
    const auto& row = lp.rows[i];
    for (int j = 0; j < n; ++j) {
      const double a = s * row[j];
      tab.at(i, pos_col[j]) = a;
      if (neg_col[j] >= 0) tab.at(i, neg_col[j]) = -a;
    }
    tab.at(i, slack0 + i) = s;
    tab.rhs(i) = s * lp.rhs[i];
    if (art_col[i] >= 0) {
      tab.at(i, art_col[i]) = 1.0;
      tab.basis[i] = art_col[i];
    } else {
      tab.basis[i] = slack0 + i;
    }
  }

  const int max_pivots = opts.max_pivots > 0 ? opts.max_pivots : 50000 + 100 * (m + cols);
  Solution sol;
  std::vector<char> excluded(cols, 0);

  // Phase 1: maximize -(sum of artificials).
  const bool need_phase1 = std::any_of(art_col.begin(), art_col.end(), [](int c) { return c >= 0; });
  if (need_phase1) {
    std::vector<double> cost(cols, 0.0);
    for (int c : art_col)
      if (c >= 0) cost[c] = -1.0;
    tab.set_costs(cost);
    run_phase(tab, excluded, opts, sol.pivots, max_pivots);
    double infeas = 0.0;
    double scale = 1.0;
    for (int i = 0; i < m; ++i) {
      scale = std::max(scale, std::abs(lp.rhs[i]));
      if (cost[tab.basis[i]] < 0.0) infeas += tab.rhs(i);
    }
    if (infeas > opts.feasibility_tol * scale) {
      sol.status = Status::Infeasible;
      return sol;
    }
    // Drive remaining (zero-level) artificials out of the basis where possible.
    for (int i = 0; i < m; ++i) {
      if (cost[tab.basis[i]] >= 0.0) continue;
      for (int j = 0; j < slack0 + m; ++j) {
        if (std::abs(tab.at(i, j)) > 1e-9) {
          tab.pivot(i, j);
          break;
        }
      }
    }
    for (int c : art_col)
      if (c >= 0) excluded[c] = 1;
  }

  std::vector<double> cost(cols, 0.0);
  for (int j = 0; j < n; ++j) {
    cost[pos_col[j]] = lp.objective[j];
    if (neg_col[j] >= 0)
      cost[neg_col[j]] = -lp.objective[j];
  }
  tab.set_costs(cost);
  if (run_phase(tab, excluded, opts, sol.pivots, max_pivots) == PhaseResult::Unbounded) {
    sol.status = Status::Unbounded;
    return sol;
  }

  std::vector<double> colval(cols, 0.0);
  for (int i = 0; i < m; ++i) colval[tab.basis[i]] = std::max(0.0, tab.rhs(i));
  sol.status = Status::Optimal;
  sol.x.assign(n, 0.0);
  for (int j = 0; j < n; ++j) {
    double v = colval[pos_col[j]];
    if (neg_col[j] >= 0) v -= colval[neg_col[j]];
    sol.x[j] = v;
  }
  sol.objective_value = 0.0;
  for (int j = 0; j < n; ++j) sol.objective_value += lp.objective[j] * sol.x[j];
  sol.duals.assign(m, 0.0);
  for (int i = 0; i < m; ++i) sol.duals[i] = std::max(0.0, -tab.reduced[slack0 + i]);
  return sol;
}

double primal_infeasibility(const LinearProgram& lp, const std::vector<double>& x) {
  double worst = 0.0;
  for (int i = 0; i < lp.num_constraints(); ++i) {
    double ax = 0.0;
    for (int j = 0; j < lp.num_vars(); ++j) ax += lp.rows[i][j] * x[j];
    worst = std::max(worst, ax - lp.rhs[i]);
  }
  for (int j = 0; j < lp.num_vars(); ++j)
    if (!is_free(lp, j)) worst = std::max(worst, -x[j]);
  return worst;
}

double dual_infeasibility(const LinearProgram& lp, const std::vector<double>& y) {
  double worst = 0.0;
  for (double yi : y) worst = std::max(worst, -yi);
  for (int j = 0; j < lp.num_vars(); ++j) {
    double aty = 0.0;
    for (int i = 0; i < lp.num_constraints(); ++i) aty += lp.rows[i][j] * y[i];
    const double slack = aty - lp.objective[j];
    worst = std::max(worst, is_free(lp, j) ? std::abs(slack) : -slack);
  }
  return worst;
}

double complementary_slackness_residual(const LinearProgram& lp, const Solution& sol) {
  double worst = 0.0;
  for (int i = 0; i < lp.num_constraints(); ++i) {
    double ax = 0.0;
    for (int j = 0; j < lp.num_vars(); ++j) ax += lp.rows[i][j] * sol.x[j];
    worst = std::max(worst, std::abs(sol.duals[i] * (lp.rhs[i] - ax)));
  }
  for (int j = 0; j < lp.num_vars(); ++j) {
    double aty = 0.0;
    for (int i = 0; i < lp.num_constraints(); ++i) aty += lp.rows[i][j] * sol.duals[i];
    worst = std::max(worst, std::abs(sol.x[j] * (aty - lp.objective[j])));
  }
  return worst;
}

}  // namespace oneshot::lp
