#pragma once

#include "stochopt/core/batch.hpp"
#include "stochopt/core/rng.hpp"
#include "stochopt/problems/problem.hpp"
#include "stochopt/so/cg.hpp"

namespace stochopt {

enum class CurvatureKind { Hessian, GaussNewton, GeneralizedGaussNewton, Fisher };

struct NewtonCGOptions {
  double cg_tolerance = 0.1;   // rho
  index_t max_cg = 10;
  double armijo_c = 1e-4;      // eta
  double backtrack = 0.5;      // gamma
  index_t max_backtracks = 60;
  CurvatureKind curvature = CurvatureKind::Hessian;
  double gn_regularization = 1e-8;  // added to Gauss-Newton/Fisher operators
  // |S_k^H| = ceil(hessian_batch_ratio * |S_k|), drawn as a subset of S_k.
  double hessian_batch_ratio = 1.0;
};

struct NewtonCGState {
  Vector w;
  index_t k = 1;
  index_t adp = 0;
  index_t negative_curvature_events = 0;
};

struct NewtonCGStepInfo {
  double step_size = 0.0;
  index_t cg_iterations = 0;
  CGStatus cg_status = CGStatus::Converged;
  double directional_derivative = 0.0;
};

// The curvature operator v -> C(w; batch) v + reg v per the configured kind.
LinearOperator make_curvature_operator(const Problem& problem, const Vector& w,
                                       std::span<const index_t> batch,
                                       CurvatureKind kind,
                                       double regularization);

// One subsampled Hessian-free inexact Newton step with Armijo
// backtracking on the batch objective.  gradient_batch is S_k; the
// curvature batch S_k^H is its prefix of size ceil(ratio |S_k|).
// Throws StepFailureError when the line search exhausts its budget.
// adp accounting: |S_k| for the gradient plus |S_k^H| per CG iteration.
NewtonCGStepInfo newton_cg_step(NewtonCGState& state, const Problem& problem,
                                const Batch& gradient_batch,
                                const NewtonCGOptions& options);

// Deterministic full-batch driver: runs newton_cg_step with S_k =
// {0..n-1} until ||grad F|| <= gtol or max_iterations; returns the
// iterations used (max_iterations + 1 when the tolerance was not met).
index_t newton_cg_solve(NewtonCGState& state, const Problem& problem,
                        const NewtonCGOptions& options, double gtol,
                        index_t max_iterations);

}  // namespace stochopt
