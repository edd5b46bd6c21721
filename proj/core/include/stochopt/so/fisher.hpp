#pragma once

#include "stochopt/problems/problem.hpp"
#include "stochopt/so/cg.hpp"

namespace stochopt {

// Matrix-free empirical-Fisher operator on a batch:
// v -> (1/|S|) sum_i grad f_i (grad f_i^T v).
LinearOperator make_fisher_operator(const Problem& problem, const Vector& w,
                                    std::span<const index_t> batch);

// Practical natural-gradient direction: solves (G~ + mu_reg I) p = g by
// conjugate gradient with the batch empirical Fisher G~.  Requires a
// log-loss-style problem (throws CapabilityError otherwise).
Vector empirical_fisher_direction(const Problem& problem, const Vector& w,
                                  std::span<const index_t> batch,
                                  const Vector& g, double mu_reg,
                                  double cg_tolerance = 1e-8,
                                  index_t max_cg = 100);

}  // namespace stochopt
