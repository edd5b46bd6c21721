#pragma once

#include <optional>

#include "stochopt/core/batch.hpp"
#include "stochopt/core/rng.hpp"
#include "stochopt/problems/composite.hpp"

namespace stochopt {

// Per coordinate: (|w_i| - tau)_+ sign(w_i).
Vector soft_threshold(const Vector& w, double tau);
double soft_threshold_scalar(double w, double tau);

// One proximal gradient step on phi = F + lambda1 ||.||_1:
// soft_threshold(w - alpha grad F(w), alpha lambda1).  When `batch` is
// given a batch gradient substitutes for the full gradient.
Vector ista_step(const Vector& w, const CompositeL1Problem& problem,
                 double alpha, const Batch* batch = nullptr);

// FISTA state: the extrapolation point and momentum sequence
// t_{k+1} = (1 + sqrt(1 + 4 t_k^2)) / 2.
struct FistaState {
  Vector w;
  Vector extrapolated;
  double t = 1.0;
  index_t k = 1;

  static FistaState init(Vector w0);
};

// One accelerated proximal gradient step; the first iteration equals
// ista_step.  force_zero_momentum reduces the method to ISTA bitwise.
void fista_step(FistaState& state, const CompositeL1Problem& problem,
                double alpha, bool force_zero_momentum = false);

// Gradient projection on the positive/negative split w = u - v, with
// complementarity restored by subtracting the common part after the
// projected step.
struct SplitPair {
  Vector u;
  Vector v;

  Vector w() const { return u - v; }
};
SplitPair gradient_projection_split_step(const SplitPair& pair,
                                         const CompositeL1Problem& problem,
                                         double alpha);

// 1/L stepsize from the smooth part's analytic bound.
double default_prox_stepsize(const CompositeL1Problem& problem);

// Backtracking variant: halves alpha until the composite sufficient
// decrease F(w+) <= F(w) + grad^T (w+ - w) + 1/(2 alpha) ||w+ - w||^2
// holds; returns the accepted stepsize.
double backtracking_prox_stepsize(const Vector& w,
                                  const CompositeL1Problem& problem,
                                  double alpha0);

}  // namespace stochopt
