#pragma once

#include <span>
#include <vector>

#include "oneshot/hermitian.hpp"
#include "oneshot/options.hpp"

namespace oneshot {

// --- 1-norm radius -----------------------------------------------------------

struct Rad1Result {
  double radius = 0.0;
  std::vector<double> center;
  // max_x ||n_x - center||_1 recomputed from the returned center.
  double max_distance = 0.0;
};

// Chebyshev radius of a finite vector set under the 1-norm, solved exactly as
// the linear program  min r  s.t.  sum_j s_xj <= r,  |c_j - n_xj| <= s_xj.
// Requires 1..64 vectors of a common length <= 256.
Rad1Result rad1(const std::vector<std::vector<double>>& vectors);

// --- Operator-norm radius ----------------------------------------------------

struct RadOpResult {
  // max_i ||H_i - center||: an upper bound on the radius attained by center.
  double radius = 0.0;
  HermitianOp center;
  // Certified lower bound on the radius: the larger of the pairwise bound
  // max_{i,j} ||H_i - H_j|| / 2 and the dual objective of the multipliers
  // below (when present).
  double dual_lower_bound = 0.0;
  double pairwise_bound = 0.0;
  // Feasible dual multipliers (PSD, sum lambda = sum lambda',
  // Tr sum lambda = 1/2). Empty for the subgradient method.
  std::vector<HermitianOp> lambdas;
  std::vector<HermitianOp> lambdas_prime;
  RadiusMethod method = RadiusMethod::Barrier;

  double gap() const { return radius - dual_lower_bound; }
};

// Default certification tolerance for rad_op at the given dimension.
double default_radius_tolerance(int dim);

// Chebyshev radius under the operator norm, min_C max_i ||H_i - C||.
// All operators must share one dimension in [1, 4]; at most 16 operators.
//
// Barrier method (default): tolerance is the target duality gap (default
// 1e-9, scaled by the operator magnitudes). Subgradient method: step a/(k+b)
// with a = 1, b = 10 relative to the set diameter, `iterations` per restart
// (default 5000), `restarts` seeded restarts (default 32).
RadOpResult rad_op(std::span<const HermitianOp> ops, const SolverOptions& opts = {});

// max_i ||H_i - center||
double max_distance(std::span<const HermitianOp> ops, const HermitianOp& center);

// max_{i,j} ||H_i - H_j|| / 2
double pairwise_lower_bound(std::span<const HermitianOp> ops);

// Dual objective sum_i Tr((lambda_i - lambda'_i) H_i). Throws ValidationError
// unless every multiplier has min eigenvalue >= -1e-9, sum lambda equals
// sum lambda' within 1e-8 entrywise, and Tr(sum lambda) = 1/2 within 1e-8.
// Any feasible value is a lower bound on the radius.
double dual_value(std::span<const HermitianOp> ops, std::span<const HermitianOp> lambdas,
                  std::span<const HermitianOp> lambdas_prime);

// Rad{alpha J_y + (1 - alpha) K_y} <= alpha Rad{J} + (1 - alpha) Rad{K} + 1e-6
bool rad_convexity_check(std::span<const HermitianOp> j_ops, std::span<const HermitianOp> k_ops, double alpha,
                         const SolverOptions& opts = {});

}  // namespace oneshot
