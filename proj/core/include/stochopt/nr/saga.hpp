#pragma once

#include "stochopt/core/rng.hpp"
#include "stochopt/nr/gradient_table.hpp"
#include "stochopt/problems/problem.hpp"

namespace stochopt {

// Table initialization: evaluate all n component gradients at w_1 (the
// default), or assimilate components one-by-one as they are first drawn.
enum class SagaInit { FullAtStart, Assimilate };

struct SagaState {
  Vector w;
  index_t k = 1;
  index_t adp = 0;
  GradientTable table;

  SagaState(Vector w0, const Problem& problem);
};

// Fills the whole table at the current iterate (costs n accesses).
void saga_init_full(SagaState& state, const Problem& problem);

// One SAGA step: j uniform; g = grad f_j(w) - stored_j + table average;
// store the fresh gradient; w -= alpha g.  With a partially assimilated
// table the average runs over the initialized entries.
void saga_step(SagaState& state, const Problem& problem, double alpha,
               const RandomStream& stream);

// One SAG step: g = (1/n)(grad f_j(w) - stored_j + sum stored); biased
// but linearly convergent.
void sag_step(SagaState& state, const Problem& problem, double alpha,
              const RandomStream& stream);

// alpha = 1/(2(cn+L)) when the strong convexity constant is known.
double saga_stepsize(double c, index_t n, double L);
// alpha = 1/(3L) otherwise.
double saga_stepsize_unknown_c(double L);

}  // namespace stochopt
