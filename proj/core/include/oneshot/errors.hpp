#pragma once

#include <stdexcept>
#include <string>

namespace oneshot {

// Malformed or out-of-contract input: bad shapes, non-stochastic rows,
// infeasible certificates, parameters outside their documented range.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DimensionError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// A computation would exceed its enumeration or size budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An iterative method hit its iteration cap, or a post-condition check
// failed. Indicates a solver bug or a numerically hostile input.
class InternalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace oneshot
