#pragma once

#include <functional>

#include "stochopt/problems/composite.hpp"
#include "stochopt/core/types.hpp"

namespace stochopt {

// Quadratic-plus-l1 model
//   q(w) = F(w_k) + grad^T (w - w_k) + 1/2 (w - w_k)^T H (w - w_k)
//          + lambda1 ||w||_1
// around the current iterate, with coordinate access to H (the
// coordinate-descent subsolver needs diagonals and columns).
class ProxNewtonModel {
 public:
  ProxNewtonModel(Vector center, Vector gradient, Matrix hessian,
                  double f_center, double lambda1);

  double value(const Vector& w) const;
  // Gradient of the smooth part of q at w.
  Vector smooth_gradient(const Vector& w) const;

  const Vector& center() const { return center_; }
  double l1_weight() const { return lambda1_; }
  const Matrix& hessian() const { return H_; }

  // Fixed prox stepsize used by the ISTA-norm optimality measure
  // (1 / ||H||_inf, constant per model).
  double ista_stepsize() const { return ista_alpha_; }

  // || prox step from w || under the model; zero exactly at the model
  // minimizer, continuous elsewhere.
  double ista_norm(const Vector& w) const;
  Vector ista_point(const Vector& w) const;

 private:
  Vector center_;
  Vector gradient_;
  Matrix H_;
  double f_center_;
  double lambda1_;
  double ista_alpha_;
};

struct ProxNewtonOptions {
  double eta = 0.1;           // inexactness parameter in [0,1)
  index_t subsolver_budget = 2000;  // coordinate-descent sweeps limit (in coords)
  double backtrack = 0.5;
  index_t max_backtracks = 60;
  // Superlinear mode: eta_k = min(0.1, sqrt(ista-norm at w_k)).
  bool decreasing_eta = false;
};

struct ProxNewtonStepResult {
  Vector w;
  Vector subproblem_point;  // the accepted model minimizer w~
  bool inexactness_warning = false;  // budget exhausted before criteria
  index_t coordinate_updates = 0;
  double step_size = 1.0;
};

// One proximal Newton step: coordinate descent on the model (each 1-d
// subproblem solved in closed form by soft-thresholding) until the
// ISTA-norm termination test and a strict model decrease hold, then
// backtracking on phi along the subproblem direction.
ProxNewtonStepResult prox_newton_step(const Vector& w,
                                      const CompositeL1Problem& problem,
                                      const ProxNewtonModel& model,
                                      const ProxNewtonOptions& options);

// Convenience: builds the model with the exact (dense) Hessian of the
// smooth part assembled from d Hessian-vector products.
ProxNewtonModel make_exact_hessian_model(const Vector& w,
                                         const CompositeL1Problem& problem);

}  // namespace stochopt
