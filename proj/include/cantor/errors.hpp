#pragma once

#include <stdexcept>
#include <string>

namespace cantor {

/// Bad arguments, malformed descriptors, violated preconditions.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Values left the representable range (F_n grows doubly exponentially off the set).
class RangeError : public std::range_error {
 public:
  using std::range_error::range_error;
};

/// An iterative kernel did not reach its target (bisection budget, inverse iteration).
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Recurrence coefficients failed to stabilise within the depth budget.
class ConvergenceFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cantor
