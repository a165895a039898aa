#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "oneshot/channels.hpp"
#include "oneshot/correlations.hpp"
#include "oneshot/options.hpp"

namespace oneshot {

// Deterministic assisted protocol for one bit a:
//   Alice feeds e1[a] to part A, gets p, sends x = e2[a][p];
//   Bob sees y, feeds d1[y] to part B, gets q, guesses d2[y][q].
struct ProtocolStrategy {
  std::vector<int> e1;               // [a] -> r
  std::vector<std::vector<int>> e2;  // [a][p] -> x
  std::vector<int> d1;               // [y] -> s
  std::vector<std::vector<int>> d2;  // [y][q] -> guess

  bool operator==(const ProtocolStrategy&) const = default;
};

// Throws ValidationError unless the maps are total over the alphabets of ch and d.
void validate_strategy(const Channel& ch, const Correlation& d, const ProtocolStrategy& strat);

// (1/2) sum_{a,p,q,y} D(p,q | e1(a), d1(y)) N(y | e2(a,p)) [d2(y,q) = a]
double simulate(const Channel& ch, const Correlation& d, const ProtocolStrategy& strat);

struct AssistedResult {
  double value = 0.5;
  ProtocolStrategy strategy;
  double device_bound = 1.0;
  std::optional<double> local_fraction_bound;
  std::int64_t encoders = 0;
};

// Largest encoder count optimal_assisted_succ will enumerate.
inline constexpr std::int64_t kEncoderBudget = std::int64_t{1} << 24;

// Exact optimum over deterministic strategies. Encoder pairs (e1 outer, e2
// inner, both in lexicographic order with the first entry most significant)
// are enumerated exhaustively; for fixed encoders the decoder is optimal per
// channel output. Ties go to the smallest encoder index, then the smallest
// s per y and the guess 0. Throws BudgetError when
// |R|^2 |X|^(2|P|) exceeds kEncoderBudget. opts.threads splits the encoder
// range; the result does not depend on it.
AssistedResult optimal_assisted_succ(const Channel& ch, const Correlation& d, const SolverOptions& opts = {});

// Number of encoder pairs the enumeration would visit (saturates at budget + 1).
std::int64_t encoder_count(const Channel& ch, const Correlation& d);

struct BoundResult {
  double bound = 1.0;
  bool holds = true;
};

// 1/2 + (2 - 2/k)(succ - 1/2) with k = min(2|P|, |X|), the number of channel
// inputs a deterministic protocol can reach; holds iff value <= bound + 1e-9.
BoundResult check_device_bound(const Channel& ch, const Correlation& d, double value);

// The same bound with k = 2|P|, i.e. 1/2 + (2 - 1/|P|)(succ - 1/2).
double device_alphabet_bound(const Channel& ch, const Correlation& d);

// 1/2 + [1 + (1/2)(1 - loc(d))](succ - 1/2) for a binary non-signaling box;
// holds iff value <= bound + 1e-6. Throws ValidationError otherwise.
BoundResult check_local_fraction_bound(const Channel& ch, const Correlation& d, double value);

}  // namespace oneshot
