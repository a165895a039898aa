#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "oneshot/hermitian.hpp"

namespace oneshot {

/// Two-part box p(p, q | r, s): part A takes r in R and returns p in P, part B
/// takes s in S and returns q in Q. Stored flat in [r][s][p][q] order.
class Correlation {
 public:
  static constexpr double kEntryTol = 1e-12;
  static constexpr double kNormTol = 1e-9;

  // Entries in [-1e-12, 0) are clamped to zero and counted; anything more
  // negative, non-finite, or a (r, s) block not summing to 1 is rejected.
  Correlation(std::vector<std::string> r_labels, std::vector<std::string> s_labels, std::vector<std::string> p_labels,
              std::vector<std::string> q_labels, std::vector<double> table);

  int num_r() const { return static_cast<int>(r_.size()); }
  int num_s() const { return static_cast<int>(s_.size()); }
  int num_p() const { return static_cast<int>(p_.size()); }
  int num_q() const { return static_cast<int>(q_.size()); }
  const std::vector<std::string>& r_labels() const { return r_; }
  const std::vector<std::string>& s_labels() const { return s_; }
  const std::vector<std::string>& p_labels() const { return p_; }
  const std::vector<std::string>& q_labels() const { return q_; }

  // p(p, q | r, s)
  double operator()(int p, int q, int r, int s) const { return table_[index(r, s, p, q)]; }
  std::size_t index(int r, int s, int p, int q) const {
    return ((static_cast<std::size_t>(r) * s_.size() + s) * p_.size() + p) * q_.size() + q;
  }
  const std::vector<double>& table() const { return table_; }

  bool is_binary() const { return num_r() == 2 && num_s() == 2 && num_p() == 2 && num_q() == 2; }
  // Number of slightly negative entries clamped at construction.
  int clamped_entries() const { return clamped_; }

 private:
  std::vector<std::string> r_, s_, p_, q_;
  std::vector<double> table_;
  int clamped_ = 0;
};

// Binary box from a function of (p, q, r, s).
template <typename F>
Correlation make_binary_box(F&& prob) {
  std::vector<double> t;
  for (int r = 0; r < 2; ++r)
    for (int s = 0; s < 2; ++s)
      for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q) t.push_back(prob(p, q, r, s));
  return Correlation({"0", "1"}, {"0", "1"}, {"0", "1"}, {"0", "1"}, std::move(t));
}

// Marginals sum_p p(pq|rs) independent of r and sum_q p(pq|rs) independent
// of s, within tol.
bool is_nonsignaling(const Correlation& d, double tol = 1e-9);

// The 16 local deterministic binary boxes; index 4f + g where part A outputs
// bit r of f and part B outputs bit s of g.
std::vector<Correlation> deterministic_boxes();

// f_j = sum (-1)^{p xor q xor g_j(r, s)} p(pq|rs) with g_1 = r and s,
// g_2 = (not r) and s, g_3 = r and (not s), g_4 = (not r) and (not s).
std::array<double, 4> chsh_values(const Correlation& d);

// Box with p = 1/2 exactly when p xor q = g_j(r, s) (xor 1 for the negative
// sign). j in 1..4, sign +1 or -1.
Correlation pr_box(int j, int sign);

// p(pq|rs) = Tr((A_r^p (x) B_s^q) state) for a state on C^n (x) C^n and one
// POVM per input on each side (all POVMs on a side share their outcome
// count).
Correlation quantum_correlation(const HermitianOp& state, const std::vector<std::vector<HermitianOp>>& alice,
                                const std::vector<std::vector<HermitianOp>>& bob);

// Maximally entangled qubit pair with Alice measuring Z, X and Bob measuring
// (Z + X)/sqrt2, (Z - X)/sqrt2; outcome 0 is the +1 eigenprojector.
Correlation tsirelson_box();

struct LocalFraction {
  double alpha = 0.0;
  std::array<double, 16> weights{};  // over deterministic_boxes()
  // (d - sum q_i L_i) / (1 - alpha), present when alpha < 1 - 1e-9.
  std::optional<Correlation> residual;
};

// Largest alpha with d = alpha L + (1 - alpha) F, L local, F non-signaling,
// via the LP max sum q_i s.t. sum q_i L_i <= d entrywise, q >= 0. Requires a
// binary non-signaling box.
LocalFraction local_fraction(const Correlation& d);

// Part A maps a in {0,1} to a uniformly random vector in F_2^m with first
// coordinate a; part B maps (w, t), w != 0, to a xor t xor <w, vector>.
// P is indexed by the vector's integer value (bit 0 = first coordinate),
// S by 2(w - 1) + t. Requires 1 <= m <= 6.
Correlation device_E(int m);

// Uniform box over the given alphabet sizes.
Correlation uniform_box(int r, int s, int p, int q);

// Box whose parts always output p0 and q0.
Correlation fixed_output_box(int r, int s, int p, int q, int p0, int q0);

}  // namespace oneshot
