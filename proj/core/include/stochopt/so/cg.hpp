#pragma once

#include <functional>

#include "stochopt/core/types.hpp"

namespace stochopt {

using LinearOperator = std::function<Vector(const Vector&)>;

enum class CGStatus { Converged, MaxIterations, NegativeCurvature };

struct CGResult {
  Vector direction;
  CGStatus status = CGStatus::MaxIterations;
  double residual_norm = 0.0;
  index_t iterations = 0;
};

// Conjugate gradient on H s = -g from the zero start.  Stops when
// ||H s + g|| <= rho ||g||, on the iteration cap, or when a trial
// direction p has p^T H p <= 0 (returning the best iterate so far; the
// steepest-descent direction -g if that happens first).  After one
// iteration the direction is a positive multiple of -g.
CGResult cg_solve(const LinearOperator& hv, const Vector& g, double rho,
                  index_t max_cg);

}  // namespace stochopt
