#pragma once

#include <vector>

#include "stochopt/problems/composite.hpp"
#include "stochopt/so/cg.hpp"

namespace stochopt {

// The minimum norm subgradient of F + lambda ||.||_1 at w; zero exactly
// at composite optimality.
Vector min_norm_subgradient(const Vector& w, const Vector& grad_f,
                            double lambda);

// Sign vector, active set (variables held at zero) and free set for the
// orthant step at w.
struct OrthantContext {
  Vector sign;                 // zeta
  std::vector<int> active;     // w_i = 0 and |grad_i| <= lambda
  std::vector<int> free_vars;  // the rest
  Vector min_norm_subgrad;
};
OrthantContext build_orthant_context(const Vector& w, const Vector& grad_f,
                                     double lambda);

// Projection onto the orthant defined by the sign vector: coordinates
// whose sign disagrees are zeroed.
Vector project_to_orthant(const Vector& w, const Vector& sign);

struct OrthantOptions {
  double cg_tolerance = 1e-2;
  index_t max_cg = 50;
  double backtrack = 0.5;
  index_t max_backtracks = 60;
  double convergence_tol = 0.0;  // on ||min-norm subgradient||
};

struct OrthantStepResult {
  Vector w;
  bool converged = false;
  double step_size = 0.0;
  double subgradient_norm = 0.0;
};

// One orthant-based second-order step: builds the context at w, solves
// the quadratic model over the free variables with CG on the supplied
// curvature operator, then backtracks on phi along the direction with
// every trial point projected back onto the orthant.
OrthantStepResult orthant_step(const Vector& w,
                               const CompositeL1Problem& problem,
                               const LinearOperator& hessian,
                               const OrthantOptions& options);

enum class OrthantCurvature {
  LbfgsPairs,    // pairs built from full-gradient displacements (default)
  ExactHessian,  // the smooth part's Hessian-vector products
};

struct OrthantSolveResult {
  Vector w;
  index_t iterations = 0;
  bool converged = false;
};

// True when ||min-norm subgradient||^2 is below the rounding resolution
// of phi, i.e. no strictly decreasing step is representable; a
// backtracking stall there is stationarity, not failure.
bool orthant_at_rounding_floor(const CompositeL1Problem& problem,
                               const Vector& w);

// Runs orthant steps until ||min-norm subgradient|| <= tol.
OrthantSolveResult orthant_solve(const CompositeL1Problem& problem, Vector w0,
                                 OrthantCurvature curvature, double tol,
                                 index_t max_iterations,
                                 const OrthantOptions& options = {});

}  // namespace stochopt
