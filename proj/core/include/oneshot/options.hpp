#pragma once

#include <cstdint>

namespace oneshot {

enum class RadiusMethod {
  Barrier,     // log-barrier Newton on the semidefinite form; certified
  Subgradient  // seeded-restart subgradient descent on the center
};

// Knobs shared by the iterative solvers. A zero value selects the default
// documented at each call site.
struct SolverOptions {
  int restarts = 0;
  int iterations = 0;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  int threads = 1;
  RadiusMethod method = RadiusMethod::Barrier;
};

}  // namespace oneshot
