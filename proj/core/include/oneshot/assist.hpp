#pragma once

#include <vector>

#include "oneshot/channels.hpp"
#include "oneshot/hermitian.hpp"
#include "oneshot/options.hpp"
#include "oneshot/radius.hpp"

namespace oneshot {

// --- Non-signaling assistance ---------------------------------------------------

struct SuccNsResult {
  double value = 0.5;
  // Center c of the 1-norm minimax and max_x ||n_x - c||_1 recomputed at c.
  std::vector<double> center;
  double max_distance = 0.0;
};

// 1/2 + Rad_1{rows of N} / 2
SuccNsResult succ_ns(const Channel& ch);

// --- Entanglement assistance ----------------------------------------------------

enum class ElementType { Zero, Identity, Rank1, General };

const char* to_string(ElementType t);

struct FamilyElement {
  ElementType type = ElementType::Zero;
  // Rank-1 qubit elements only: projection onto cos(theta)|0> + e^{i phi} sin(theta)|1>.
  double theta = 0.0;
  double phi = 0.0;
  Projector projector = Projector::from_op(HermitianOp::zero(2));
};

// One measurement element B_y per channel output.
struct ProjectionFamily {
  int dim = 2;
  std::vector<FamilyElement> elements;

  std::vector<HermitianOp> ops() const;
};

// Measurement elements (any 0 <= B_y <= I) and steered states rho_a^x.
struct QuantumStrategy {
  std::vector<HermitianOp> elements;  // per output y
  std::vector<HermitianOp> rho0;      // per input x
  std::vector<HermitianOp> rho1;
};

struct SuccQnResult {
  double value = 0.5;
  ProjectionFamily family;
  RadOpResult radius;
  // States built from the radius multipliers (rho_0^x = 2 lambda_x,
  // rho_1^x = 2 lambda'_x); evaluating them with the family reproduces the
  // dual side of the value. Empty when no multipliers were available.
  QuantumStrategy witness;
  double witness_value = 0.5;
  // True for n > 2, where the search is a local method without a global
  // optimality guarantee.
  bool heuristic = false;
  int assignments_searched = 0;
};

// Sum_y N(y|x) B_y for each input x.
std::vector<HermitianOp> candidate_set(const Channel& ch, const std::vector<HermitianOp>& elements);

// max over projection families of 1/2 + Rad{sum_y N(y|x) B_y}.
//
// n = 2: every assignment of {zero, identity, rank-1} types to the outputs is
// searched (up to the global complement B -> I - B); rank-1 elements are
// optimized by alternating between the radius multipliers and the best
// response projectors, from `restarts` seeded starts (default 64).
// n = 3, 4: the same alternation over unrestricted projectors; the result is
// flagged heuristic. Requires 2 <= n <= 4 and at most 8 outputs.
SuccQnResult succ_qn(const Channel& ch, int n, const SolverOptions& opts = {});

// The Prevedel channel's value through its three-projector form
// 1/2 + (1/3) max Rad{X+Y+Z, X+Y'+Z', X'+Y+Z', X'+Y'+Z} (primes are
// complements), searched by angle coordinate descent.
double succ_q2_prevedel_reduced(const SolverOptions& opts = {});

// Radius of the four-operator set for fixed qubit projectors X, Y, Z.
double prevedel_reduced_radius(const HermitianOp& x, const HermitianOp& y, const HermitianOp& z,
                               const SolverOptions& opts = {});

// 1/2 + (1/2) Tr[sum_x (rho_0^x - rho_1^x) sum_y N(y|x) B_y]. Throws
// ValidationError when an element leaves [0, I] or the states violate
// positivity, sum_x rho_0^x = sum_x rho_1^x, or Tr sum_x rho_0^x = 1.
double eval_strategy_success(const Channel& ch, const QuantumStrategy& strat);

// --- Bound checks ---------------------------------------------------------------

struct BoundCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = true;
};

// lhs = succ_ns - 1/2, rhs = (2 - 2/|X|)(succ - 1/2); holds iff lhs <= rhs + 1e-9.
BoundCheck check_ns_advantage_bound(const Channel& ch);

struct RatioCheck {
  double ratio = 0.0;
  double bound = 0.0;
  bool holds = true;
};

// ratio = (succ_qb_lower - 1/2) / (succ - 1/2) against 1/2 + 1/sqrt(2),
// with slack 1e-6. Throws ValidationError when succ - 1/2 <= 1e-12.
RatioCheck check_binary_quantum_ratio(const Channel& ch, double succ_qb_lower);

}  // namespace oneshot
