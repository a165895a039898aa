#include "oneshot/assist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "oneshot/errors.hpp"
#include "oneshot/parallel.hpp"
#include "oneshot/random.hpp"

namespace oneshot {

SuccNsResult succ_ns(const Channel& ch) {
  const Rad1Result r = rad1(ch.matrix());
  return {0.5 + r.radius / 2.0, r.center, r.max_distance};
}

const char* to_string(ElementType t) {
  switch (t) {
    case ElementType::Zero: return "zero";
    case ElementType::Identity: return "identity";
    case ElementType::Rank1: return "rank1";
    case ElementType::General: return "general";
  }
  return "?";
}

std::vector<HermitianOp> ProjectionFamily::ops() const {
  std::vector<HermitianOp> out;
  for (const auto& e : elements) out.push_back(e.projector.op());
  return out;
}

std::vector<HermitianOp> candidate_set(const Channel& ch, const std::vector<HermitianOp>& elements) {
  if (static_cast<int>(elements.size()) != ch.num_outputs())
    throw DimensionError("candidate_set: need one element per channel output");
  const int n = elements.empty() ? 1 : elements.front().dim();
  std::vector<HermitianOp> out;
  for (int x = 0; x < ch.num_inputs(); ++x) {
    HermitianOp h = HermitianOp::zero(n);
    for (int y = 0; y < ch.num_outputs(); ++y)
      if (ch(x, y) != 0.0) h += ch(x, y) * elements[y];
    out.push_back(std::move(h));
  }
  return out;
}

namespace {

constexpr double kLooseGap = 1e-7;
constexpr int kMaxAlternations = 100;

// sum_x N(y|x) (lambda_x - lambda'_x): the operator each B_y is paired with
// in the dual objective.
std::vector<HermitianOp> paired_operators(const Channel& ch, const RadOpResult& r, int n) {
  std::vector<HermitianOp> d(ch.num_outputs(), HermitianOp::zero(n));
  for (int x = 0; x < ch.num_inputs(); ++x) {
    const HermitianOp mu = r.lambdas[x] - r.lambdas_prime[x];
    for (int y = 0; y < ch.num_outputs(); ++y)
      if (ch(x, y) != 0.0) d[y] += ch(x, y) * mu;
  }
  return d;
}

HermitianOp top_projector(const HermitianOp& d) {
  const Eigensystem es = eigh(d);
  const int n = d.dim();
  ComplexMatrix col(n, 1);
  for (int i = 0; i < n; ++i) col(i, 0) = es.vectors(i, n - 1);
  return Projector::onto_columns(col).op();
}

HermitianOp random_rank1(Rng& rng) {
  const double theta = 0.5 * std::acos(1.0 - 2.0 * rng.uniform());
  const double phi = 2.0 * std::numbers::pi * rng.uniform();
  return projector_from_angles(theta, phi).op();
}

// Projector of uniformly random rank onto random orthonormal columns.
HermitianOp random_projector(Rng& rng, int n) {
  const int rank = static_cast<int>(rng.below(n + 1));
  if (rank == 0) return HermitianOp::zero(n);
  ComplexMatrix cols(n, rank);
  for (int k = 0; k < rank; ++k) {
    for (int i = 0; i < n; ++i) cols(i, k) = Complex(rng.normal(), rng.normal());
    for (int j = 0; j < k; ++j) {  // Gram-Schmidt
      Complex dot = 0.0;
      for (int i = 0; i < n; ++i) dot += std::conj(cols(i, j)) * cols(i, k);
      for (int i = 0; i < n; ++i) cols(i, k) -= dot * cols(i, j);
    }
    double norm = 0.0;
    for (int i = 0; i < n; ++i) norm += std::norm(cols(i, k));
    norm = std::sqrt(norm);
    for (int i = 0; i < n; ++i) cols(i, k) /= norm;
  }
  return Projector::onto_columns(cols).op();
}

struct LocalResult {
  double value = -1.0;
  std::vector<HermitianOp> elements;
};

// Alternates between the radius multipliers for the current family and the
// projectors maximizing the paired dual objective. Elements not listed in
// `free` stay fixed; rank1 selects rank-1 best responses over positive parts.
LocalResult alternate(const Channel& ch, std::vector<HermitianOp> elements, const std::vector<int>& free,
                      bool rank1, const SolverOptions& base) {
  const int n = elements.front().dim();
  SolverOptions loose = base;
  loose.tolerance = kLooseGap;
  loose.threads = 1;
  LocalResult best;
  for (int it = 0; it < kMaxAlternations; ++it) {
    const RadOpResult r = rad_op(candidate_set(ch, elements), loose);
    if (r.radius <= best.value + 1e-9) break;
    best = {r.radius, elements};
    if (r.lambdas.empty() || free.empty()) break;
    const std::vector<HermitianOp> d = paired_operators(ch, r, n);
    for (int y : free) elements[y] = rank1 ? top_projector(d[y]) : positive_part_projector(d[y]);
  }
  return best;
}

FamilyElement make_element(const HermitianOp& op, ElementType type) {
  FamilyElement e;
  e.type = type;
  e.projector = Projector::from_op(op);
  if (type == ElementType::Rank1 && op.dim() == 2) {
    const auto a = angles_of_rank1(e.projector);
    e.theta = a[0];
    e.phi = a[1];
  }
  return e;
}

ElementType classify(const HermitianOp& op) {
  const int n = op.dim();
  const double tr = op.trace();
  if (std::abs(tr) < 1e-9) return ElementType::Zero;
  if (std::abs(tr - n) < 1e-9) return ElementType::Identity;
  if (std::abs(tr - 1.0) < 1e-9) return ElementType::Rank1;
  return ElementType::General;
}

// Assignment digits, most significant first: 0 zero, 1 identity, 2 rank-1.
std::vector<int> digits_of(std::int64_t a, int k) {
  std::vector<int> d(k);
  for (int y = k - 1; y >= 0; --y) {
    d[y] = static_cast<int>(a % 3);
    a /= 3;
  }
  return d;
}

// Rad over families of the given type pattern is at most the NS value of the
// channel whose zero-typed and identity-typed outputs are merged.
double coarse_bound(const Channel& ch, const std::vector<int>& digits) {
  std::vector<std::vector<double>> rows;
  for (int x = 0; x < ch.num_inputs(); ++x) {
    std::vector<double> row(2, 0.0);
    for (int y = 0; y < ch.num_outputs(); ++y) {
      if (digits[y] == 2)
        row.push_back(ch(x, y));
      else
        row[digits[y]] += ch(x, y);
    }
    rows.push_back(std::move(row));
  }
  return rad1(rows).radius / 2.0;
}

struct Candidate {
  double value = -1.0;
  std::int64_t assignment = 0;
  int restart = 0;
  std::vector<HermitianOp> elements;
};

// (value, assignment, restart) ordering: larger value wins unless within
// 1e-12, then the smaller index pair.
bool better(const Candidate& a, const Candidate& b) {
  if (a.value > b.value + 1e-12) return true;
  if (a.value < b.value - 1e-12) return false;
  return std::pair(a.assignment, a.restart) < std::pair(b.assignment, b.restart);
}

Candidate search_qubit(const Channel& ch, const SolverOptions& opts, int restarts, int& searched) {
  const int k = ch.num_outputs();
  std::int64_t total = 1;
  for (int y = 0; y < k; ++y) total *= 3;
  const HermitianOp zero = HermitianOp::zero(2), id = HermitianOp::identity(2);
  const HermitianOp p0 = projector_from_angle(0.0).op();

  struct Pending {
    double bound;
    std::int64_t assignment;
  };
  std::vector<Pending> pending;
  Candidate best;
  searched = 0;
  for (std::int64_t a = 0; a < total; ++a) {
    const std::vector<int> d = digits_of(a, k);
    // B -> I - B for every y maps each candidate to I - H_x, same radius.
    const auto first = std::find_if(d.begin(), d.end(), [](int t) { return t != 2; });
    if (first != d.end() && *first != 0) continue;
    const int rank1 = static_cast<int>(std::count(d.begin(), d.end(), 2));
    if (rank1 >= 2) {
      pending.push_back({coarse_bound(ch, d), a});
      continue;
    }
    // At most one rank-1 element: every choice is unitarily equivalent.
    std::vector<HermitianOp> el;
    for (int t : d) el.push_back(t == 0 ? zero : t == 1 ? id : p0);
    Candidate c{rad_op(candidate_set(ch, el), opts).radius, a, 0, el};
    ++searched;
    if (better(c, best)) best = std::move(c);
  }

  std::stable_sort(pending.begin(), pending.end(), [](const Pending& a, const Pending& b) { return a.bound > b.bound; });
  for (const Pending& p : pending) {
    // Families whose bound falls clearly short of the incumbent cannot win.
    if (p.bound < best.value - 1e-7) continue;
    ++searched;
    const std::vector<int> d = digits_of(p.assignment, k);
    std::vector<int> free;
    for (int y = 0; y < k; ++y)
      if (d[y] == 2) free.push_back(y);
    std::vector<Candidate> runs(restarts);
    detail::parallel_for(restarts, opts.threads, [&](std::int64_t r) {
      Rng rng(mix_seed(opts.seed, static_cast<std::uint64_t>(p.assignment) * 4096 + static_cast<std::uint64_t>(r)));
      std::vector<HermitianOp> el;
      for (int t : d) el.push_back(t == 0 ? zero : t == 1 ? id : random_rank1(rng));
      LocalResult lr = alternate(ch, el, free, true, opts);
      runs[r] = {lr.value, p.assignment, static_cast<int>(r), std::move(lr.elements)};
    });
    for (auto& c : runs)
      if (better(c, best)) best = std::move(c);
  }
  return best;
}

Candidate search_general(const Channel& ch, int n, const SolverOptions& opts, int restarts) {
  const int k = ch.num_outputs();
  std::vector<int> free(k);
  for (int y = 0; y < k; ++y) free[y] = y;
  std::vector<Candidate> runs(restarts);
  detail::parallel_for(restarts, opts.threads, [&](std::int64_t r) {
    Rng rng(mix_seed(opts.seed, static_cast<std::uint64_t>(r)));
    std::vector<HermitianOp> el;
    for (int y = 0; y < k; ++y) el.push_back(random_projector(rng, n));
    LocalResult lr = alternate(ch, el, free, false, opts);
    runs[r] = {lr.value, 0, static_cast<int>(r), std::move(lr.elements)};
  });
  Candidate best;
  for (auto& c : runs)
    if (better(c, best)) best = std::move(c);
  return best;
}

}  // namespace

SuccQnResult succ_qn(const Channel& ch, int n, const SolverOptions& opts) {
  if (n < 2 || n > 4) throw ValidationError("succ_qn: dimension n must be in [2, 4], got " + std::to_string(n));
  if (ch.num_outputs() > 8) throw ValidationError("succ_qn: at most 8 channel outputs");
  if (ch.num_inputs() > 16) throw ValidationError("succ_qn: at most 16 channel inputs");
  const int restarts = opts.restarts > 0 ? opts.restarts : 64;

  SuccQnResult out;
  Candidate best;
  if (n == 2) {
    best = search_qubit(ch, opts, restarts, out.assignments_searched);
  } else {
    best = search_general(ch, n, opts, restarts);
    out.heuristic = true;
    out.assignments_searched = 0;
  }

  SolverOptions tight = opts;
  tight.threads = 1;
  out.radius = rad_op(candidate_set(ch, best.elements), tight);
  out.value = 0.5 + out.radius.radius;
  out.family.dim = n;
  for (const auto& op : best.elements) out.family.elements.push_back(make_element(op, classify(op)));

  if (!out.radius.lambdas.empty()) {
    out.witness.elements = best.elements;
    for (int x = 0; x < ch.num_inputs(); ++x) {
      out.witness.rho0.push_back(2.0 * out.radius.lambdas[x]);
      out.witness.rho1.push_back(2.0 * out.radius.lambdas_prime[x]);
    }
    out.witness_value = eval_strategy_success(ch, out.witness);
  }
  return out;
}

double prevedel_reduced_radius(const HermitianOp& x, const HermitianOp& y, const HermitianOp& z,
                               const SolverOptions& opts) {
  const HermitianOp id = HermitianOp::identity(x.dim());
  const HermitianOp xc = id - x, yc = id - y, zc = id - z;
  const std::vector<HermitianOp> set = {x + y + z, x + yc + zc, xc + y + zc, xc + yc + z};
  SolverOptions o = opts;
  o.threads = 1;
  return rad_op(set, o).radius;
}

double succ_q2_prevedel_reduced(const SolverOptions& opts) {
  const int restarts = opts.restarts > 0 ? opts.restarts : 8;
  const HermitianOp zero = HermitianOp::zero(2), id = HermitianOp::identity(2);
  constexpr double kPi = std::numbers::pi;
  constexpr int kGrid = 16;
  constexpr double kAngleTol = 1e-7;

  double best = 0.0;
  for (int combo = 0; combo < 27; ++combo) {
    const std::vector<int> types = digits_of(combo, 3);
    // Unitary freedom: the first rank-1 projector is P_0 and the second is
    // real. Parameters: theta of the second, then (theta, phi) of the third.
    std::vector<int> rank1;
    for (int i = 0; i < 3; ++i)
      if (types[i] == 2) rank1.push_back(i);
    const int params = rank1.size() <= 1 ? 0 : rank1.size() == 2 ? 1 : 3;

    auto build = [&](const std::vector<double>& p) {
      std::vector<HermitianOp> ops(3);
      int seen = 0;
      for (int i = 0; i < 3; ++i) {
        if (types[i] == 0) {
          ops[i] = zero;
        } else if (types[i] == 1) {
          ops[i] = id;
        } else {
          if (seen == 0) ops[i] = projector_from_angle(0.0).op();
          if (seen == 1) ops[i] = projector_from_angle(p[0]).op();
          if (seen == 2) ops[i] = projector_from_angles(p[1], p[2]).op();
          ++seen;
        }
      }
      return ops;
    };
    auto f = [&](const std::vector<double>& p) {
      const auto ops = build(p);
      return prevedel_reduced_radius(ops[0], ops[1], ops[2], opts);
    };

    if (params == 0) {
      best = std::max(best, f({}));
      continue;
    }
    std::vector<double> results(restarts, 0.0);
    detail::parallel_for(restarts, opts.threads, [&](std::int64_t r) {
      Rng rng(mix_seed(opts.seed, static_cast<std::uint64_t>(combo) * 4096 + static_cast<std::uint64_t>(r)));
      std::vector<double> p(params);
      for (int i = 0; i < params; ++i) p[i] = rng.uniform(0.0, i == 2 ? 2.0 * kPi : kPi);
      double fp = f(p);
      for (int sweep = 0; sweep < 50; ++sweep) {
        const double before = fp;
        for (int c = 0; c < params; ++c) {
          const double period = c == 2 ? 2.0 * kPi : kPi;
          const double h = period / kGrid;
          auto g = [&](double v) {
            std::vector<double> q = p;
            q[c] = v;
            return f(q);
          };
          double arg = p[c], val = fp;
          for (int i = 0; i < kGrid; ++i) {
            const double v = p[c] + i * h;
            const double gv = g(v);
            if (gv > val) val = gv, arg = v;
          }
          // Golden-section maximization on [arg - h, arg + h].
          const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
          double lo = arg - h, hi = arg + h;
          double m1 = hi - ratio * (hi - lo), m2 = lo + ratio * (hi - lo);
          double g1 = g(m1), g2 = g(m2);
          while (hi - lo > kAngleTol) {
            if (g1 < g2) {
              lo = m1, m1 = m2, g1 = g2;
              m2 = lo + ratio * (hi - lo), g2 = g(m2);
            } else {
              hi = m2, m2 = m1, g2 = g1;
              m1 = hi - ratio * (hi - lo), g1 = g(m1);
            }
          }
          const double mid = 0.5 * (lo + hi), gm = g(mid);
          if (gm > val) val = gm, arg = mid;
          p[c] = arg;
          fp = val;
        }
        if (fp - before < 1e-10) break;
      }
      results[r] = fp;
    });
    for (double v : results) best = std::max(best, v);
  }
  return 0.5 + best / 3.0;
}

double eval_strategy_success(const Channel& ch, const QuantumStrategy& strat) {
  if (static_cast<int>(strat.elements.size()) != ch.num_outputs())
    throw DimensionError("strategy: need one measurement element per channel output");
  if (static_cast<int>(strat.rho0.size()) != ch.num_inputs() || static_cast<int>(strat.rho1.size()) != ch.num_inputs())
    throw DimensionError("strategy: need one state pair per channel input");
  const int n = strat.elements.front().dim();
  for (std::size_t y = 0; y < strat.elements.size(); ++y) {
    const auto& b = strat.elements[y];
    if (b.dim() != n) throw DimensionError("strategy: element dimensions differ");
    const auto ev = eig_hermitian(b);
    if (ev.front() < -1e-9 || ev.back() > 1.0 + 1e-9)
      throw ValidationError("strategy: element " + std::to_string(y) + " is not between 0 and I");
  }
  HermitianOp s0 = HermitianOp::zero(n), s1 = HermitianOp::zero(n);
  for (int x = 0; x < ch.num_inputs(); ++x) {
    if (strat.rho0[x].dim() != n || strat.rho1[x].dim() != n) throw DimensionError("strategy: state dimensions differ");
    if (min_eigenvalue(strat.rho0[x]) < -1e-9 || min_eigenvalue(strat.rho1[x]) < -1e-9)
      throw ValidationError("strategy: state for input " + std::to_string(x) + " is not positive semidefinite");
    s0 += strat.rho0[x];
    s1 += strat.rho1[x];
  }
  if (max_abs_entry((s0 - s1).matrix()) > 1e-8) throw ValidationError("strategy: sum of rho_0 differs from sum of rho_1");
  if (std::abs(s0.trace() - 1.0) > 1e-8) throw ValidationError("strategy: states do not have total trace 1");

  const std::vector<HermitianOp> h = candidate_set(ch, strat.elements);
  double v = 0.0;
  for (int x = 0; x < ch.num_inputs(); ++x) v += trace_product(strat.rho0[x] - strat.rho1[x], h[x]);
  return 0.5 + 0.5 * v;
}

BoundCheck check_ns_advantage_bound(const Channel& ch) {
  BoundCheck out;
  out.lhs = succ_ns(ch).value - 0.5;
  out.rhs = (2.0 - 2.0 / ch.num_inputs()) * (succ_unassisted(ch) - 0.5);
  out.holds = out.lhs <= out.rhs + 1e-9;
  return out;
}

RatioCheck check_binary_quantum_ratio(const Channel& ch, double succ_qb_lower) {
  const double denom = succ_unassisted(ch) - 0.5;
  if (denom <= 1e-12) throw ValidationError("check_binary_quantum_ratio: unassisted success is 1/2, ratio undefined");
  RatioCheck out;
  out.ratio = (succ_qb_lower - 0.5) / denom;
  out.bound = 0.5 + 1.0 / std::numbers::sqrt2;
  out.holds = out.ratio <= out.bound + 1e-6;
  return out;
}

}  // namespace oneshot
