#include "oneshot/radius.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "oneshot/channels.hpp"
#include "oneshot/errors.hpp"
#include "oneshot/lp.hpp"
#include "oneshot/parallel.hpp"
#include "oneshot/random.hpp"

namespace oneshot {

// --- 1-norm radius -------------------------------------------------------------

Rad1Result rad1(const std::vector<std::vector<double>>& vectors) {
  if (vectors.empty()) throw ValidationError("rad1: empty vector set");
  const int count = static_cast<int>(vectors.size());
  const int k = static_cast<int>(vectors.front().size());
  for (const auto& v : vectors)
    if (static_cast<int>(v.size()) != k) throw DimensionError("rad1: vectors differ in length");
  if (count > 64 || k > 256) throw ValidationError("rad1: at most 64 vectors of length <= 256");
  const double tableau_entries = (2.0 * count * k + count) * (3.0 * count * k + 2.0 * k + count + 1);
  if (tableau_entries > 2e7)
    throw BudgetError("rad1: linear program too large for the dense solver (" + std::to_string(count) +
                      " vectors of length " + std::to_string(k) + ")");

  // Variables: c_j (free), s_xj >= 0, r >= 0. Maximize -r.
  lp::LinearProgram prog;
  const int s0 = k;
  const int r_idx = k + count * k;
  prog.objective.assign(r_idx + 1, 0.0);
  prog.objective[r_idx] = -1.0;
  prog.bounds.assign(r_idx + 1, lp::VarBound::NonNegative);
  for (int j = 0; j < k; ++j) prog.bounds[j] = lp::VarBound::Free;
  for (int x = 0; x < count; ++x) {
    std::vector<std::pair<int, double>> sum_terms;
    for (int j = 0; j < k; ++j) {
      const int s = s0 + x * k + j;
      const double nxj = vectors[x][j];
      prog.add_row({{j, 1.0}, {s, -1.0}}, nxj);
      prog.add_row({{j, -1.0}, {s, -1.0}}, -nxj);
      sum_terms.emplace_back(s, 1.0);
    }
    sum_terms.emplace_back(r_idx, -1.0);
    prog.add_row(sum_terms, 0.0);
  }

  const lp::Solution sol = lp::solve(prog);
  if (sol.status != lp::Status::Optimal)
    throw InternalError("rad1: LP reported " + std::string(lp::to_string(sol.status)));

  Rad1Result out;
  out.center.assign(sol.x.begin(), sol.x.begin() + k);
  out.radius = sol.x[r_idx];
  for (const auto& v : vectors) out.max_distance = std::max(out.max_distance, l1_distance(v, out.center));
  // The LP optimum and the recomputed distance agree to solver precision; the
  // recomputed one is the value the center actually attains.
  if (std::abs(out.max_distance - out.radius) > 1e-8)
    throw InternalError("rad1: center certificate mismatch (" + std::to_string(out.max_distance) + " vs " +
                        std::to_string(out.radius) + ")");
  out.radius = out.max_distance;
  return out;
}

// --- Operator-norm radius: shared helpers ---------------------------------------

double max_distance(std::span<const HermitianOp> ops, const HermitianOp& center) {
  double d = 0.0;
  for (const auto& h : ops) d = std::max(d, operator_norm(h - center));
  return d;
}

double pairwise_lower_bound(std::span<const HermitianOp> ops) {
  double d = 0.0;
  for (std::size_t i = 0; i < ops.size(); ++i)
    for (std::size_t j = i + 1; j < ops.size(); ++j) d = std::max(d, operator_norm(ops[i] - ops[j]));
  return d / 2.0;
}

double default_radius_tolerance(int dim) { return dim <= 2 ? 1e-7 : 1e-6; }

double dual_value(std::span<const HermitianOp> ops, std::span<const HermitianOp> lambdas,
                  std::span<const HermitianOp> lambdas_prime) {
  if (ops.empty()) throw ValidationError("dual_value: empty operator set");
  if (lambdas.size() != ops.size() || lambdas_prime.size() != ops.size())
    throw DimensionError("dual_value: need one lambda and one lambda' per operator");
  const int n = ops.front().dim();
  HermitianOp sum = HermitianOp::zero(n);
  HermitianOp sum_prime = HermitianOp::zero(n);
  double value = 0.0;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (lambdas[i].dim() != n || lambdas_prime[i].dim() != n || ops[i].dim() != n)
      throw DimensionError("dual_value: dimension mismatch");
    if (min_eigenvalue(lambdas[i]) < -1e-9 || min_eigenvalue(lambdas_prime[i]) < -1e-9)
      throw ValidationError("dual_value: multiplier " + std::to_string(i) + " is not positive semidefinite");
    sum += lambdas[i];
    sum_prime += lambdas_prime[i];
    value += trace_product(lambdas[i] - lambdas_prime[i], ops[i]);
  }
  if (max_abs_entry((sum - sum_prime).matrix()) > 1e-8)
    throw ValidationError("dual_value: sum of lambda differs from sum of lambda'");
  if (std::abs(sum.trace() - 0.5) > 1e-8)
    throw ValidationError("dual_value: Tr(sum lambda) = " + std::to_string(sum.trace()) + ", expected 1/2");
  return value;
}

namespace {

void validate_ops(std::span<const HermitianOp> ops) {
  if (ops.empty()) throw ValidationError("rad_op: empty operator set");
  if (ops.size() > 16) throw ValidationError("rad_op: at most 16 operators");
  const int n = ops.front().dim();
  if (n > 4) throw DimensionError("rad_op: dimension " + std::to_string(n) + " exceeds 4");
  for (const auto& h : ops)
    if (h.dim() != n) throw DimensionError("rad_op: operators differ in dimension");
}

// Small fixed-capacity complex matrix for the inner loops (n <= 4).
struct Small {
  std::array<Complex, 16> a{};
  Complex& operator()(int i, int j) { return a[i * 4 + j]; }
  Complex operator()(int i, int j) const { return a[i * 4 + j]; }
};

// Cholesky A = L L^dagger; false if A is not numerically positive definite.
bool cholesky(const Small& m, int n, Small& l) {
  l = Small{};
  for (int j = 0; j < n; ++j) {
    double d = m(j, j).real();
    for (int k = 0; k < j; ++k) d -= std::norm(l(j, k));
    if (!(d > 0.0)) return false;
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (int i = j + 1; i < n; ++i) {
      Complex s = m(i, j);
      for (int k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
      l(i, j) = s / ljj;
    }
  }
  return true;
}

double logdet(const Small& l, int n) {
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += std::log(l(i, i).real());
  return 2.0 * s;
}

// (L L^dagger)^{-1}
Small inverse(const Small& l, int n) {
  Small linv{};
  for (int col = 0; col < n; ++col) {  // forward substitution L y = e_col
    for (int i = 0; i < n; ++i) {
      Complex s = (i == col) ? Complex(1.0) : Complex(0.0);
      for (int k = 0; k < i; ++k) s -= l(i, k) * linv(k, col);
      linv(i, col) = s / l(i, i);
    }
  }
  Small out{};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Complex s = 0.0;
      for (int k = 0; k < n; ++k) s += std::conj(linv(k, i)) * linv(k, j);
      out(i, j) = s;
    }
  return out;
}

struct BasisEntry {
  int row;
  int col;
  Complex val;
};

// Real basis of n x n Hermitian matrices: diagonal units, then for each i < j
// the symmetric real and the antisymmetric imaginary pair.
std::vector<std::vector<BasisEntry>> hermitian_basis(int n) {
  std::vector<std::vector<BasisEntry>> b;
  for (int i = 0; i < n; ++i) b.push_back({{i, i, 1.0}});
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      b.push_back({{i, j, 1.0}, {j, i, 1.0}});
      b.push_back({{i, j, Complex(0.0, -1.0)}, {j, i, Complex(0.0, 1.0)}});
    }
  return b;
}

// Solves the symmetric positive definite system h x = g in place (size <= 17).
bool solve_spd(std::vector<double> h, std::vector<double>& g, int m) {
  for (int j = 0; j < m; ++j) {
    double d = h[j * m + j];
    for (int k = 0; k < j; ++k) d -= h[j * m + k] * h[j * m + k];
    if (!(d > 0.0)) return false;
    const double ljj = std::sqrt(d);
    h[j * m + j] = ljj;
    for (int i = j + 1; i < m; ++i) {
      double s = h[i * m + j];
      for (int k = 0; k < j; ++k) s -= h[i * m + k] * h[j * m + k];
      h[i * m + j] = s / ljj;
    }
  }
  for (int i = 0; i < m; ++i) {
    double s = g[i];
    for (int k = 0; k < i; ++k) s -= h[i * m + k] * g[k];
    g[i] = s / h[i * m + i];
  }
  for (int i = m - 1; i >= 0; --i) {
    double s = g[i];
    for (int k = i + 1; k < m; ++k) s -= h[k * m + i] * g[k];
    g[i] = s / h[i * m + i];
  }
  return true;
}

// Log-barrier path following for
//   min r  s.t.  r I - (H_i - C) >= 0,  r I + (H_i - C) >= 0,
// with C expanded in the Hermitian basis. At a central point for parameter t
// the scaled inverse slacks W / t are (up to the centering residual) optimal
// dual multipliers.
class BarrierSolver {
 public:
  explicit BarrierSolver(std::span<const HermitianOp> ops)
      : n_(ops.front().dim()), count_(static_cast<int>(ops.size())), basis_(hermitian_basis(n_)),
        nv_(n_ * n_ + 1) {
    for (const auto& h : ops) {
      Small s{};
      for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) s(i, j) = h(i, j);
      ops_.push_back(s);
    }
  }

  RadOpResult solve(std::span<const HermitianOp> ops, double gap_tol) {
    const double pairwise = pairwise_lower_bound(ops);
    const double scale = std::max(1.0, 2.0 * pairwise);

    // Start from the mean operator with a comfortably feasible r.
    HermitianOp mean = HermitianOp::zero(n_);
    for (const auto& h : ops) mean += h;
    mean *= 1.0 / count_;
    std::vector<double> x(nv_, 0.0);
    for (int i = 0; i < n_; ++i) x[i] = mean(i, i).real();
    {
      int k = n_;
      for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j) {
          x[k++] = mean(i, j).real();
          x[k++] = -mean(i, j).imag();
        }
    }
    const double d0 = max_distance(ops, mean);
    x[nv_ - 1] = 1.5 * d0 + 1e-2 * scale;

    const double m_total = 2.0 * count_ * n_;
    double t = m_total / x[nv_ - 1];
    constexpr double kMu = 20.0;
    const double target = gap_tol * scale;
    DualCandidate best;
    for (int outer = 0;; ++outer) {
      if (outer > 200) throw InternalError("rad_op: barrier path following did not terminate");
      center(x, t);
      if (m_total / t <= 1e-4 * scale) {
        DualCandidate cand = dual_candidate(ops, x, t);
        if (cand.value > best.value) best = std::move(cand);
      }
      if (m_total / t <= target) break;
      t *= kMu;
    }

    RadOpResult out;
    out.method = RadiusMethod::Barrier;
    out.center = to_op(center_matrix(x), 1.0);
    out.radius = max_distance(ops, out.center);
    out.pairwise_bound = pairwise;
    out.dual_lower_bound = pairwise;
    if (!best.lambdas.empty()) {
      out.dual_lower_bound = std::max(pairwise, best.value);
      out.lambdas = std::move(best.lambdas);
      out.lambdas_prime = std::move(best.lambdas_prime);
    }
    return out;
  }

 private:
  // Fills C's matrix from parameters.
  Small center_matrix(const std::vector<double>& x) const {
    Small c{};
    for (std::size_t k = 0; k < basis_.size(); ++k)
      for (const auto& e : basis_[k]) c(e.row, e.col) += x[k] * e.val;
    return c;
  }

  // Barrier value t*r - sum log det; +inf if infeasible.
  double value(const std::vector<double>& x, double t) const {
    const Small c = center_matrix(x);
    const double r = x[nv_ - 1];
    double f = t * r;
    Small a, l;
    for (const auto& h : ops_) {
      for (int sgn : {1, -1}) {
        for (int i = 0; i < n_; ++i)
          for (int j = 0; j < n_; ++j) a(i, j) = (i == j ? Complex(r) : Complex(0.0)) - double(sgn) * (h(i, j) - c(i, j));
        if (!cholesky(a, n_, l)) return std::numeric_limits<double>::infinity();
        f -= logdet(l, n_);
      }
    }
    return f;
  }

  // Gradient and Hessian of the barrier objective; also records the inverse
  // slacks (W+_i, W-_i) for dual extraction.
  void derivatives(const std::vector<double>& x, double t, std::vector<double>& g, std::vector<double>& hess) {
    const Small c = center_matrix(x);
    const double r = x[nv_ - 1];
    g.assign(nv_, 0.0);
    g[nv_ - 1] = t;
    hess.assign(nv_ * nv_, 0.0);
    inv_plus_.assign(count_, Small{});
    inv_minus_.assign(count_, Small{});
    std::vector<Small> m(nv_);
    Small a, l;
    for (int idx = 0; idx < count_; ++idx) {
      const Small& h = ops_[idx];
      for (int sgn : {1, -1}) {
        for (int i = 0; i < n_; ++i)
          for (int j = 0; j < n_; ++j) a(i, j) = (i == j ? Complex(r) : Complex(0.0)) - double(sgn) * (h(i, j) - c(i, j));
        if (!cholesky(a, n_, l)) throw InternalError("rad_op: barrier iterate left the feasible region");
        const Small w = inverse(l, n_);
        (sgn > 0 ? inv_plus_ : inv_minus_)[idx] = w;
        // M_k = W dA/dx_k, with dA/dc_k = sgn E_k and dA/dr = I.
        for (int k = 0; k + 1 < nv_; ++k) {
          Small mk{};
          for (const auto& e : basis_[k])
            for (int row = 0; row < n_; ++row) mk(row, e.col) += double(sgn) * w(row, e.row) * e.val;
          m[k] = mk;
        }
        m[nv_ - 1] = w;
        for (int k = 0; k < nv_; ++k) {
          double tr = 0.0;
          for (int i = 0; i < n_; ++i) tr += m[k](i, i).real();
          g[k] -= tr;
          for (int q = 0; q <= k; ++q) {
            double s = 0.0;
            for (int i = 0; i < n_; ++i)
              for (int j = 0; j < n_; ++j) s += (m[k](i, j) * m[q](j, i)).real();
            hess[k * nv_ + q] += s;
          }
        }
      }
    }
    for (int k = 0; k < nv_; ++k)
      for (int q = 0; q < k; ++q) hess[q * nv_ + k] = hess[k * nv_ + q];
  }

  // Newton centering for fixed t.
  void center(std::vector<double>& x, double t) {
    std::vector<double> g, hess, step, trial(nv_);
    double fx = value(x, t);
    for (int it = 0; it < 100; ++it) {
      derivatives(x, t, g, hess);
      step = g;
      double diag = 0.0;
      for (int k = 0; k < nv_; ++k) diag = std::max(diag, hess[k * nv_ + k]);
      double ridge = 0.0;
      while (!solve_spd(hess, step, nv_)) {
        ridge = ridge == 0.0 ? 1e-14 * diag : ridge * 10.0;
        if (!(ridge <= diag)) throw InternalError("rad_op: singular barrier Hessian");
        for (int k = 0; k < nv_; ++k) hess[k * nv_ + k] += ridge;
        step = g;
      }
      double dec2 = 0.0;
      for (int k = 0; k < nv_; ++k) dec2 += g[k] * step[k];
      if (dec2 / 2.0 <= 1e-11) return;
      double s = 1.0;
      for (int ls = 0;; ++ls) {
        for (int k = 0; k < nv_; ++k) trial[k] = x[k] - s * step[k];
        const double ft = value(trial, t);
        if (ft <= fx - 0.25 * s * dec2) {
          x = trial;
          fx = ft;
          break;
        }
        s *= 0.5;
        if (ls > 60) return;  // no progress possible at double precision
      }
    }
  }

  struct DualCandidate {
    double value = -std::numeric_limits<double>::infinity();
    std::vector<HermitianOp> lambdas, lambdas_prime;
  };

  HermitianOp to_op(const Small& s, double factor) const {
    ComplexMatrix m(n_, n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) m(i, j) = factor * s(i, j);
    return HermitianOp::from_matrix(m);
  }

  // Dual multipliers read off the current (centered) iterate. Along the path
  // the scaled inverse slacks lose relative accuracy roughly like t * eps, so
  // the caller keeps the best candidate over several t.
  DualCandidate dual_candidate(std::span<const HermitianOp> ops, const std::vector<double>& x, double t) {
    std::vector<double> g, hess;
    derivatives(x, t, g, hess);
    const HermitianOp c = to_op(center_matrix(x), 1.0);
    std::vector<HermitianOp> zp, zm;
    for (int i = 0; i < count_; ++i) {
      zp.push_back(to_op(inv_plus_[i], 1.0 / t));
      zm.push_back(to_op(inv_minus_[i], 1.0 / t));
    }
    // Restore sum Z+ = sum Z- by adding the positive and negative parts of
    // the residual where they cost least, then normalize the trace.
    HermitianOp delta = HermitianOp::zero(n_);
    for (int i = 0; i < count_; ++i) delta += zp[i] - zm[i];
    const Eigensystem es = eigh(delta);
    ComplexMatrix pos(n_, n_), neg(n_, n_);
    for (int k = 0; k < n_; ++k) {
      const double ev = es.values[k];
      ComplexMatrix& part = ev > 0.0 ? pos : neg;
      for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) part(i, j) += std::abs(ev) * es.vectors(i, k) * std::conj(es.vectors(j, k));
    }
    const HermitianOp pos_op = HermitianOp::from_matrix(pos), neg_op = HermitianOp::from_matrix(neg);
    // Adding P to lambda'_j lowers the objective by Tr(P (H_j - C)) below its
    // best; adding it to lambda_j raises it by Tr(P (H_j - C)).
    int jm = 0, jp = 0;
    double best_m = std::numeric_limits<double>::infinity(), best_p = -best_m;
    for (int i = 0; i < count_; ++i) {
      const HermitianOp d = ops[i] - c;
      const double cm = trace_product(pos_op, d), cp = trace_product(neg_op, d);
      if (cm < best_m) best_m = cm, jm = i;
      if (cp > best_p) best_p = cp, jp = i;
    }
    zm[jm] += pos_op;
    zp[jp] += neg_op;
    DualCandidate out;
    double tr = 0.0;
    for (const auto& z : zp) tr += z.trace();
    if (!(tr > 0.0)) return out;
    for (int i = 0; i < count_; ++i) {
      zp[i] *= 0.5 / tr;
      zm[i] *= 0.5 / tr;
    }
    try {
      out.value = dual_value(ops, zp, zm);
      out.lambdas = std::move(zp);
      out.lambdas_prime = std::move(zm);
    } catch (const ValidationError&) {
      // Rounding pushed a multiplier outside the feasible set.
    }
    return out;
  }

  int n_;
  int count_;
  std::vector<std::vector<BasisEntry>> basis_;
  int nv_;
  std::vector<Small> ops_;
  std::vector<Small> inv_plus_, inv_minus_;
};

RadOpResult rad_op_barrier(std::span<const HermitianOp> ops, const SolverOptions& opts) {
  const double gap = opts.tolerance > 0.0 ? opts.tolerance : 1e-9;
  BarrierSolver solver(ops);
  return solver.solve(ops, gap);
}

struct SubgradientRun {
  double value = std::numeric_limits<double>::infinity();
  HermitianOp center;
};

RadOpResult rad_op_subgradient(std::span<const HermitianOp> ops, const SolverOptions& opts) {
  const int n = ops.front().dim();
  const int restarts = opts.restarts > 0 ? opts.restarts : 32;
  const int iterations = opts.iterations > 0 ? opts.iterations : 5000;
  constexpr double kA = 1.0, kB = 10.0;
  const double pairwise = pairwise_lower_bound(ops);
  const double scale = std::max(2.0 * pairwise, 1e-12);

  std::vector<SubgradientRun> runs(restarts);
  detail::parallel_for(restarts, opts.threads, [&](std::int64_t r) {
    Rng rng(mix_seed(opts.seed, static_cast<std::uint64_t>(r)));
    ComplexMatrix perturb(n, n);
    for (int i = 0; i < n; ++i) {
      perturb(i, i) = rng.normal() * scale / 4.0;
      for (int j = i + 1; j < n; ++j) {
        perturb(i, j) = Complex(rng.normal(), rng.normal()) * scale / 4.0;
        perturb(j, i) = std::conj(perturb(i, j));
      }
    }
    HermitianOp c = ops[rng.below(ops.size())] + HermitianOp::from_matrix(perturb);
    SubgradientRun best{max_distance(ops, c), c};
    for (int k = 0; k < iterations; ++k) {
      // Active operator (lowest index on ties) and its extremal eigenpair.
      int active = 0;
      double worst = -1.0;
      for (std::size_t i = 0; i < ops.size(); ++i) {
        const double d = operator_norm(ops[i] - c);
        if (d > worst) {
          worst = d;
          active = static_cast<int>(i);
        }
      }
      if (worst < best.value) best = {worst, c};
      const Eigensystem es = eigh(ops[active] - c);
      const bool top = std::abs(es.values.back()) >= std::abs(es.values.front());
      const int col = top ? n - 1 : 0;
      const double sign = top ? 1.0 : -1.0;
      // d||H - C|| / dC = -sign v v^dagger; step against it.
      ComplexMatrix dir(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) dir(i, j) = es.vectors(i, col) * std::conj(es.vectors(j, col));
      const double step = kA * scale / (k + kB);
      c += (sign * step) * HermitianOp::from_matrix(dir);
    }
    const double final_value = max_distance(ops, c);
    if (final_value < best.value) best = {final_value, c};
    runs[r] = std::move(best);
  });

  std::size_t winner = 0;
  for (std::size_t r = 1; r < runs.size(); ++r)
    if (runs[r].value < runs[winner].value) winner = r;

  RadOpResult out;
  out.method = RadiusMethod::Subgradient;
  out.center = runs[winner].center;
  out.radius = runs[winner].value;
  out.pairwise_bound = pairwise;
  out.dual_lower_bound = pairwise;
  return out;
}

}  // namespace

RadOpResult rad_op(std::span<const HermitianOp> ops, const SolverOptions& opts) {
  validate_ops(ops);
  if (opts.method == RadiusMethod::Subgradient) return rad_op_subgradient(ops, opts);
  return rad_op_barrier(ops, opts);
}

bool rad_convexity_check(std::span<const HermitianOp> j_ops, std::span<const HermitianOp> k_ops, double alpha,
                         const SolverOptions& opts) {
  if (j_ops.size() != k_ops.size()) throw DimensionError("rad_convexity_check: families differ in size");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ValidationError("rad_convexity_check: alpha outside [0, 1]");
  std::vector<HermitianOp> mixed;
  for (std::size_t i = 0; i < j_ops.size(); ++i) {
    if (j_ops[i].dim() != k_ops[i].dim()) throw DimensionError("rad_convexity_check: dimension mismatch");
    mixed.push_back(alpha * j_ops[i] + (1.0 - alpha) * k_ops[i]);
  }
  const double lhs = rad_op(mixed, opts).radius;
  const double rhs = alpha * rad_op(j_ops, opts).radius + (1.0 - alpha) * rad_op(k_ops, opts).radius;
  return lhs <= rhs + 1e-6;
}

}  // namespace oneshot
