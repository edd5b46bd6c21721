#pragma once

#include "stochopt/core/rng.hpp"
#include "stochopt/problems/problem.hpp"

namespace stochopt {

enum class SvrgOption {
  LastIterate,    // (a)
  InnerAverage,   // (b), the default: one of the two options with a rate
  RandomIterate,  // (c)
};

// One outer SVRG iteration: a full-gradient evaluation followed by m
// inner corrected steps; costs exactly n + 2m component-gradient
// accesses (accumulated into adp).  Inner indices are drawn uniformly
// with replacement from the iteration-k stream.
Vector svrg_outer(const Problem& problem, const Vector& w_k, double alpha,
                  index_t m, SvrgOption option, const RandomStream& stream,
                  index_t k, index_t& adp);

// The convergence-rate quantity (1/(1-2 a L)) (1/(m c a) + 2 L a); the
// outer gap contracts by this factor when it is below one.
double svrg_rate_constant(double alpha, index_t m, double c, double L);

// The inner-step direction: grad f_i(wt) - (grad f_i(w_anchor) - anchor_grad).
Vector svrg_inner_direction(const Problem& problem, const Vector& wt,
                            const Vector& w_anchor, const Vector& anchor_grad,
                            index_t i);

}  // namespace stochopt
