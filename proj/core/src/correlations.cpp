#include "oneshot/correlations.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "oneshot/errors.hpp"
#include "oneshot/lp.hpp"

namespace oneshot {

Correlation::Correlation(std::vector<std::string> r_labels, std::vector<std::string> s_labels,
                         std::vector<std::string> p_labels, std::vector<std::string> q_labels,
                         std::vector<double> table)
    : r_(std::move(r_labels)), s_(std::move(s_labels)), p_(std::move(p_labels)), q_(std::move(q_labels)),
      table_(std::move(table)) {
  if (r_.empty() || s_.empty() || p_.empty() || q_.empty()) throw ValidationError("correlation: empty alphabet");
  const std::size_t expected = r_.size() * s_.size() * p_.size() * q_.size();
  if (table_.size() != expected)
    throw ValidationError("correlation: table has " + std::to_string(table_.size()) + " entries, expected " +
                          std::to_string(expected));
  for (int r = 0; r < num_r(); ++r)
    for (int s = 0; s < num_s(); ++s) {
      double sum = 0.0;
      for (int p = 0; p < num_p(); ++p)
        for (int q = 0; q < num_q(); ++q) {
          double& v = table_[index(r, s, p, q)];
          if (!std::isfinite(v) || v < -kEntryTol || v > 1.0 + kEntryTol)
            throw ValidationError("correlation: entry [" + r_[r] + "][" + s_[s] + "][" + p_[p] + "][" + q_[q] +
                                  "] = " + std::to_string(v) + " is outside [0, 1]");
          if (v < 0.0) {
            v = 0.0;
            ++clamped_;
          }
          sum += v;
        }
      if (std::abs(sum - 1.0) > kNormTol)
        throw ValidationError("correlation: block r=" + r_[r] + ", s=" + s_[s] + " sums to " + std::to_string(sum));
    }
}

bool is_nonsignaling(const Correlation& d, double tol) {
  // Bob's marginal must not depend on r.
  for (int s = 0; s < d.num_s(); ++s)
    for (int q = 0; q < d.num_q(); ++q) {
      double ref = 0.0;
      for (int r = 0; r < d.num_r(); ++r) {
        double m = 0.0;
        for (int p = 0; p < d.num_p(); ++p) m += d(p, q, r, s);
        if (r == 0)
          ref = m;
        else if (std::abs(m - ref) > tol)
          return false;
      }
    }
  // Alice's marginal must not depend on s.
  for (int r = 0; r < d.num_r(); ++r)
    for (int p = 0; p < d.num_p(); ++p) {
      double ref = 0.0;
      for (int s = 0; s < d.num_s(); ++s) {
        double m = 0.0;
        for (int q = 0; q < d.num_q(); ++q) m += d(p, q, r, s);
        if (s == 0)
          ref = m;
        else if (std::abs(m - ref) > tol)
          return false;
      }
    }
  return true;
}

std::vector<Correlation> deterministic_boxes() {
  std::vector<Correlation> out;
  for (int f = 0; f < 4; ++f)
    for (int g = 0; g < 4; ++g)
      out.push_back(make_binary_box([f, g](int p, int q, int r, int s) {
        return (p == ((f >> r) & 1) && q == ((g >> s) & 1)) ? 1.0 : 0.0;
      }));
  return out;
}

namespace {

int chsh_parity(int j, int r, int s) {
  switch (j) {
    case 1: return r & s;
    case 2: return (1 - r) & s;
    case 3: return r & (1 - s);
    default: return (1 - r) & (1 - s);
  }
}

void require_binary(const Correlation& d, const char* who) {
  if (!d.is_binary()) throw DimensionError(std::string(who) + ": box is not binary");
}

}  // namespace

std::array<double, 4> chsh_values(const Correlation& d) {
  require_binary(d, "chsh_values");
  std::array<double, 4> f{};
  for (int j = 1; j <= 4; ++j)
    for (int r = 0; r < 2; ++r)
      for (int s = 0; s < 2; ++s)
        for (int p = 0; p < 2; ++p)
          for (int q = 0; q < 2; ++q) {
            const int e = p ^ q ^ chsh_parity(j, r, s);
            f[j - 1] += (e ? -1.0 : 1.0) * d(p, q, r, s);
          }
  return f;
}

Correlation pr_box(int j, int sign) {
  if (j < 1 || j > 4) throw ValidationError("pr_box: index must be in 1..4, got " + std::to_string(j));
  if (sign != 1 && sign != -1) throw ValidationError("pr_box: sign must be +1 or -1");
  const int flip = sign < 0 ? 1 : 0;
  return make_binary_box(
      [j, flip](int p, int q, int r, int s) { return (p ^ q) == (chsh_parity(j, r, s) ^ flip) ? 0.5 : 0.0; });
}

Correlation quantum_correlation(const HermitianOp& state, const std::vector<std::vector<HermitianOp>>& alice,
                                const std::vector<std::vector<HermitianOp>>& bob) {
  if (alice.empty() || bob.empty()) throw ValidationError("quantum_correlation: need at least one input per side");
  const int n = alice.front().front().dim();
  if (state.dim() != n * n)
    throw DimensionError("quantum_correlation: state dimension " + std::to_string(state.dim()) + " is not " +
                         std::to_string(n) + "^2");
  if (std::abs(state.trace() - 1.0) > 1e-9) throw ValidationError("quantum_correlation: state trace is not 1");
  if (min_eigenvalue(state) < -1e-9) throw ValidationError("quantum_correlation: state is not positive semidefinite");
  auto check = [n](const std::vector<std::vector<HermitianOp>>& povms, const char* side) {
    const std::size_t outcomes = povms.front().size();
    for (std::size_t i = 0; i < povms.size(); ++i) {
      const auto& povm = povms[i];
      if (povm.size() != outcomes || outcomes == 0)
        throw ValidationError(std::string("quantum_correlation: ") + side + " POVMs differ in outcome count");
      HermitianOp sum = HermitianOp::zero(n);
      for (const auto& e : povm) {
        if (e.dim() != n) throw DimensionError("quantum_correlation: POVM element dimension mismatch");
        if (min_eigenvalue(e) < -1e-9)
          throw ValidationError(std::string("quantum_correlation: ") + side + " POVM element is not PSD");
        sum += e;
      }
      if (max_abs_entry((sum - HermitianOp::identity(n)).matrix()) > 1e-9)
        throw ValidationError(std::string("quantum_correlation: ") + side + " POVM " + std::to_string(i) +
                              " does not sum to identity");
    }
  };
  check(alice, "Alice");
  check(bob, "Bob");

  const int nr = static_cast<int>(alice.size()), ns = static_cast<int>(bob.size());
  const int np = static_cast<int>(alice.front().size()), nq = static_cast<int>(bob.front().size());
  std::vector<double> t;
  for (int r = 0; r < nr; ++r)
    for (int s = 0; s < ns; ++s)
      for (int p = 0; p < np; ++p)
        for (int q = 0; q < nq; ++q) {
          const HermitianOp ab = HermitianOp::from_matrix(kron(alice[r][p].matrix(), bob[s][q].matrix()));
          t.push_back(trace_product(ab, state));
        }
  auto labels = [](int k) {
    std::vector<std::string> l;
    for (int i = 0; i < k; ++i) l.push_back(std::to_string(i));
    return l;
  };
  Correlation d(labels(nr), labels(ns), labels(np), labels(nq), std::move(t));
  if (!is_nonsignaling(d, 1e-8)) throw InternalError("quantum_correlation: result is signaling");
  return d;
}

Correlation tsirelson_box() {
  constexpr double pi = std::numbers::pi;
  ComplexMatrix phi(4, 4);
  for (int i : {0, 3})
    for (int j : {0, 3}) phi(i, j) = 0.5;
  const HermitianOp state = HermitianOp::from_matrix(phi);
  auto basis = [](double theta) {
    return std::vector<HermitianOp>{projector_from_angle(theta).op(), projector_from_angle(theta + pi / 2).op()};
  };
  return quantum_correlation(state, {basis(0.0), basis(pi / 4)}, {basis(pi / 8), basis(-pi / 8)});
}

LocalFraction local_fraction(const Correlation& d) {
  require_binary(d, "local_fraction");
  if (!is_nonsignaling(d)) throw ValidationError("local_fraction: box is not non-signaling");
  const std::vector<Correlation> boxes = deterministic_boxes();

  lp::LinearProgram prog;
  prog.objective.assign(16, 1.0);
  prog.bounds.assign(16, lp::VarBound::NonNegative);
  for (std::size_t e = 0; e < d.table().size(); ++e) {
    std::vector<std::pair<int, double>> terms;
    for (int i = 0; i < 16; ++i)
      if (boxes[i].table()[e] != 0.0) terms.emplace_back(i, 1.0);
    prog.add_row(terms, d.table()[e]);
  }
  const lp::Solution sol = lp::solve(prog);
  if (sol.status != lp::Status::Optimal)
    throw InternalError("local_fraction: LP reported " + std::string(lp::to_string(sol.status)));

  LocalFraction out;
  for (int i = 0; i < 16; ++i) {
    out.weights[i] = std::max(0.0, sol.x[i]);
    out.alpha += out.weights[i];
  }
  out.alpha = std::min(out.alpha, 1.0);
  if (out.alpha < 1.0 - 1e-9) {
    std::vector<double> res(d.table().size());
    for (std::size_t e = 0; e < res.size(); ++e) {
      double v = d.table()[e];
      for (int i = 0; i < 16; ++i) v -= out.weights[i] * boxes[i].table()[e];
      v /= 1.0 - out.alpha;
      res[e] = std::abs(v) < 1e-9 ? 0.0 : v;
    }
    // Renormalize each block against rounding before validation.
    for (std::size_t b = 0; b < res.size(); b += 4) {
      const double s = res[b] + res[b + 1] + res[b + 2] + res[b + 3];
      if (s > 0.0)
        for (int k = 0; k < 4; ++k) res[b + k] /= s;
    }
    Correlation residual(d.r_labels(), d.s_labels(), d.p_labels(), d.q_labels(), std::move(res));
    // The residual is non-signaling in exact arithmetic; checked anyway.
    if (!is_nonsignaling(residual, 1e-6)) throw InternalError("local_fraction: residual box is signaling");
    out.residual = std::move(residual);
  }
  return out;
}

Correlation device_E(int m) {
  if (m < 1 || m > 6) throw ValidationError("device_E: m must be in [1, 6], got " + std::to_string(m));
  const int vecs = 1 << m;
  const int nonzero = vecs - 1;
  std::vector<std::string> r{"0", "1"}, q{"0", "1"}, p, s;
  for (int v = 0; v < vecs; ++v) {
    std::string l;
    for (int b = 0; b < m; ++b) l += ((v >> b) & 1) ? '1' : '0';
    p.push_back(l);
  }
  for (int w = 1; w <= nonzero; ++w)
    for (int t = 0; t < 2; ++t) s.push_back("(" + std::to_string(w) + "," + std::to_string(t) + ")");
  const double weight = 1.0 / (vecs / 2);
  std::vector<double> table;
  table.reserve(2 * s.size() * vecs * 2);
  for (int a = 0; a < 2; ++a)
    for (int w = 1; w <= nonzero; ++w)
      for (int t = 0; t < 2; ++t)
        for (int v = 0; v < vecs; ++v)
          for (int out = 0; out < 2; ++out) {
            const bool first = (v & 1) == a;
            const int expect = a ^ t ^ (std::popcount(static_cast<unsigned>(w & v)) & 1);
            table.push_back(first && out == expect ? weight : 0.0);
          }
  return Correlation(std::move(r), std::move(s), std::move(p), std::move(q), std::move(table));
}

Correlation uniform_box(int r, int s, int p, int q) {
  if (r < 1 || s < 1 || p < 1 || q < 1) throw ValidationError("uniform_box: alphabet sizes must be positive");
  auto labels = [](int k) {
    std::vector<std::string> l;
    for (int i = 0; i < k; ++i) l.push_back(std::to_string(i));
    return l;
  };
  return Correlation(labels(r), labels(s), labels(p), labels(q),
                     std::vector<double>(static_cast<std::size_t>(r) * s * p * q, 1.0 / (p * q)));
}

Correlation fixed_output_box(int r, int s, int p, int q, int p0, int q0) {
  if (p0 < 0 || p0 >= p || q0 < 0 || q0 >= q) throw ValidationError("fixed_output_box: output outside alphabet");
  Correlation u = uniform_box(r, s, p, q);
  std::vector<double> t(u.table().size(), 0.0);
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < s; ++b) t[u.index(a, b, p0, q0)] = 1.0;
  return Correlation(u.r_labels(), u.s_labels(), u.p_labels(), u.q_labels(), std::move(t));
}

}  // namespace oneshot
