#pragma once

#include "stochopt/problems/problem.hpp"

namespace stochopt {

struct ReferenceOptimum {
  Vector w;
  double value = 0.0;
  double gradient_norm = 0.0;
};

// Trusted (F_*, w_*) for gap-based checks: closed form when the problem
// knows it, otherwise a deterministic full-batch Newton-CG solve to
// ||grad F|| <= gtol.  Computed once per experiment and passed along.
ReferenceOptimum reference_optimum(const Problem& problem,
                                   double gtol = 1e-12);

}  // namespace stochopt
