#pragma once

#include <stdexcept>
#include <string>

#include "stochopt/core/types.hpp"

namespace stochopt {

// A solver iterate became non-finite (or the objective exceeded the
// divergence limit).  Carries the last finite state so callers can report it.
class DivergedError : public std::runtime_error {
 public:
  DivergedError(std::string what, Vector last_finite_iterate, index_t k)
      : std::runtime_error(std::move(what)),
        last_finite_iterate(std::move(last_finite_iterate)),
        iteration(k) {}

  Vector last_finite_iterate;
  index_t iteration;
};

// An operation was requested that the given problem does not support
// (e.g. a Gauss-Newton variant on a problem without a prediction function).
class CapabilityError : public std::logic_error {
  using std::logic_error::logic_error;
};

// A line search exhausted its backtracking budget.
class StepFailureError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace stochopt
