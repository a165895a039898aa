#include "oneshot/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "oneshot/errors.hpp"
#include "oneshot/parallel.hpp"

namespace oneshot {

void validate_strategy(const Channel& ch, const Correlation& d, const ProtocolStrategy& st) {
  auto in_range = [](int v, int n) { return v >= 0 && v < n; };
  if (st.e1.size() != 2) throw ValidationError("strategy: e1 needs 2 entries");
  for (int r : st.e1)
    if (!in_range(r, d.num_r())) throw ValidationError("strategy: e1 entry outside the device input alphabet");
  if (st.e2.size() != 2) throw ValidationError("strategy: e2 needs 2 rows");
  for (const auto& row : st.e2) {
    if (static_cast<int>(row.size()) != d.num_p())
      throw ValidationError("strategy: e2 rows need one entry per device output p");
    for (int x : row)
      if (!in_range(x, ch.num_inputs())) throw ValidationError("strategy: e2 entry outside the channel input alphabet");
  }
  if (static_cast<int>(st.d1.size()) != ch.num_outputs())
    throw ValidationError("strategy: d1 needs one entry per channel output");
  for (int s : st.d1)
    if (!in_range(s, d.num_s())) throw ValidationError("strategy: d1 entry outside the device input alphabet");
  if (static_cast<int>(st.d2.size()) != ch.num_outputs())
    throw ValidationError("strategy: d2 needs one row per channel output");
  for (const auto& row : st.d2) {
    if (static_cast<int>(row.size()) != d.num_q())
      throw ValidationError("strategy: d2 rows need one entry per device output q");
    for (int g : row)
      if (g != 0 && g != 1) throw ValidationError("strategy: d2 guesses must be 0 or 1");
  }
}

double simulate(const Channel& ch, const Correlation& d, const ProtocolStrategy& st) {
  validate_strategy(ch, d, st);
  double v = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int p = 0; p < d.num_p(); ++p)
      for (int y = 0; y < ch.num_outputs(); ++y) {
        const double n = ch(st.e2[a][p], y);
        if (n == 0.0) continue;
        for (int q = 0; q < d.num_q(); ++q)
          if (st.d2[y][q] == a) v += d(p, q, st.e1[a], st.d1[y]) * n;
      }
  return 0.5 * v;
}

std::int64_t encoder_count(const Channel& ch, const Correlation& d) {
  std::int64_t total = static_cast<std::int64_t>(d.num_r()) * d.num_r();
  for (int i = 0; i < 2 * d.num_p(); ++i) {
    total *= ch.num_inputs();
    if (total > kEncoderBudget) return kEncoderBudget + 1;
  }
  return total;
}

namespace {

// T[idx][y][s][q] = sum_p D(p, q | r, s) N(y | half(p)) for every half-encoder
// p -> x with mixed-radix index idx (p = 0 most significant).
std::vector<double> half_tables(const Channel& ch, const Correlation& d, int r, std::int64_t halves) {
  const int ny = ch.num_outputs(), ns = d.num_s(), nq = d.num_q(), np = d.num_p(), nx = ch.num_inputs();
  const std::size_t stride = static_cast<std::size_t>(ny) * ns * nq;
  std::vector<double> t(static_cast<std::size_t>(halves) * stride, 0.0);
  std::vector<int> enc(np, 0);
  for (std::int64_t idx = 0; idx < halves; ++idx) {
    std::int64_t rem = idx;
    for (int p = np - 1; p >= 0; --p) {
      enc[p] = static_cast<int>(rem % nx);
      rem /= nx;
    }
    double* out = &t[static_cast<std::size_t>(idx) * stride];
    for (int y = 0; y < ny; ++y)
      for (int s = 0; s < ns; ++s)
        for (int q = 0; q < nq; ++q) {
          double v = 0.0;
          for (int p = 0; p < np; ++p) v += d(p, q, r, s) * ch(enc[p], y);
          out[(y * ns + s) * nq + q] = v;
        }
  }
  return t;
}

// (1/2) sum_y max_s sum_q max(T0, T1)
double decoded_value(const double* t0, const double* t1, int ny, int ns, int nq) {
  double total = 0.0;
  for (int y = 0; y < ny; ++y) {
    double best = -1.0;
    for (int s = 0; s < ns; ++s) {
      double v = 0.0;
      const int base = (y * ns + s) * nq;
      for (int q = 0; q < nq; ++q) v += std::max(t0[base + q], t1[base + q]);
      best = std::max(best, v);
    }
    total += best;
  }
  return 0.5 * total;
}

}  // namespace

AssistedResult optimal_assisted_succ(const Channel& ch, const Correlation& d, const SolverOptions& opts) {
  if (d.num_r() > 4 || d.num_p() > 16 || ch.num_inputs() > 16)
    throw BudgetError("optimal_assisted_succ: requires |R| <= 4, |P| <= 16, |X| <= 16 (got " +
                      std::to_string(d.num_r()) + ", " + std::to_string(d.num_p()) + ", " +
                      std::to_string(ch.num_inputs()) + ")");
  const std::int64_t total = encoder_count(ch, d);
  if (total > kEncoderBudget)
    throw BudgetError("optimal_assisted_succ: " + std::to_string(d.num_r()) + "^2 * " +
                      std::to_string(ch.num_inputs()) + "^(2*" + std::to_string(d.num_p()) +
                      ") encoder pairs exceed the budget of 2^24");

  const int nr = d.num_r(), ny = ch.num_outputs(), ns = d.num_s(), nq = d.num_q();
  std::int64_t halves = 1;
  for (int p = 0; p < d.num_p(); ++p) halves *= ch.num_inputs();
  const std::size_t stride = static_cast<std::size_t>(ny) * ns * nq;
  std::vector<std::vector<double>> tables;
  for (int r = 0; r < nr; ++r) tables.push_back(half_tables(ch, d, r, halves));

  // Outer slots are (e1, first half of e2); each records its best value over
  // the second half. The reduction below only looks at slot order.
  const std::int64_t slots = static_cast<std::int64_t>(nr) * nr * halves;
  auto slot_ptrs = [&](std::int64_t slot, std::int64_t h1) {
    const std::int64_t e1 = slot / halves, h0 = slot % halves;
    const int r0 = static_cast<int>(e1 / nr), r1 = static_cast<int>(e1 % nr);
    return std::pair(&tables[r0][static_cast<std::size_t>(h0) * stride], &tables[r1][static_cast<std::size_t>(h1) * stride]);
  };
  std::vector<double> slot_best(slots, -1.0);
  detail::parallel_for(slots, opts.threads, [&](std::int64_t slot) {
    double best = -1.0;
    for (std::int64_t h1 = 0; h1 < halves; ++h1) {
      const auto [t0, t1] = slot_ptrs(slot, h1);
      best = std::max(best, decoded_value(t0, t1, ny, ns, nq));
    }
    slot_best[slot] = best;
  });
  const double top = *std::max_element(slot_best.begin(), slot_best.end());
  std::int64_t slot = 0;
  while (slot_best[slot] < top - 1e-12) ++slot;
  std::int64_t h1 = 0;
  for (;; ++h1) {
    const auto [t0, t1] = slot_ptrs(slot, h1);
    if (decoded_value(t0, t1, ny, ns, nq) >= top - 1e-12) break;
  }

  // Rebuild the witness.
  AssistedResult out;
  out.encoders = total;
  ProtocolStrategy& st = out.strategy;
  const std::int64_t e1 = slot / halves, h0 = slot % halves;
  st.e1 = {static_cast<int>(e1 / nr), static_cast<int>(e1 % nr)};
  st.e2.assign(2, std::vector<int>(d.num_p(), 0));
  for (int a = 0; a < 2; ++a) {
    std::int64_t rem = a == 0 ? h0 : h1;
    for (int p = d.num_p() - 1; p >= 0; --p) {
      st.e2[a][p] = static_cast<int>(rem % ch.num_inputs());
      rem /= ch.num_inputs();
    }
  }
  const auto [t0, t1] = slot_ptrs(slot, h1);
  st.d1.assign(ny, 0);
  st.d2.assign(ny, std::vector<int>(nq, 0));
  for (int y = 0; y < ny; ++y) {
    double best = -1.0;
    for (int s = 0; s < ns; ++s) {
      double v = 0.0;
      const int base = (y * ns + s) * nq;
      for (int q = 0; q < nq; ++q) v += std::max(t0[base + q], t1[base + q]);
      if (v > best) best = v, st.d1[y] = s;
    }
    const int base = (y * ns + st.d1[y]) * nq;
    for (int q = 0; q < nq; ++q) st.d2[y][q] = t1[base + q] > t0[base + q] ? 1 : 0;
  }
  out.value = simulate(ch, d, st);
  if (std::abs(out.value - top) > 1e-12)
    throw InternalError("optimal_assisted_succ: witness strategy does not reproduce the optimum");

  out.device_bound = check_device_bound(ch, d, out.value).bound;
  if (d.is_binary() && is_nonsignaling(d)) out.local_fraction_bound = check_local_fraction_bound(ch, d, out.value).bound;
  return out;
}

BoundResult check_device_bound(const Channel& ch, const Correlation& d, double value) {
  const int reach = std::min(2 * d.num_p(), ch.num_inputs());
  BoundResult out;
  out.bound = reach <= 1 ? 0.5 : 0.5 + (2.0 - 2.0 / reach) * (succ_unassisted(ch) - 0.5);
  out.holds = value <= out.bound + 1e-9;
  return out;
}

double device_alphabet_bound(const Channel& ch, const Correlation& d) {
  return 0.5 + (2.0 - 1.0 / d.num_p()) * (succ_unassisted(ch) - 0.5);
}

BoundResult check_local_fraction_bound(const Channel& ch, const Correlation& d, double value) {
  if (!d.is_binary()) throw ValidationError("check_local_fraction_bound: device is not binary");
  if (!is_nonsignaling(d)) throw ValidationError("check_local_fraction_bound: device is not non-signaling");
  const double loc = local_fraction(d).alpha;
  BoundResult out;
  out.bound = 0.5 + (1.0 + 0.5 * (1.0 - loc)) * (succ_unassisted(ch) - 0.5);
  out.holds = value <= out.bound + 1e-6;
  return out;
}

}  // namespace oneshot
