#include "stochopt/harness/reference.hpp"

#include <stdexcept>

#include "stochopt/so/cg.hpp"
#include "stochopt/so/newton_cg.hpp"

namespace stochopt {

ReferenceOptimum reference_optimum(const Problem& problem, double gtol) {
  ReferenceOptimum ref;
  if (auto fstar = problem.known_optimal_value();
      fstar && problem.known_minimizer()) {
    ref.w = *problem.known_minimizer();
    ref.value = *fstar;
    ref.gradient_norm = problem.full_gradient(ref.w).norm();
    return ref;
  }

  // Globalized phase: Armijo Newton-CG down to a coarse tolerance.  The
  // line search cannot certify decrease once the true reduction falls
  // below the rounding resolution of F, so the last digits come from a
  // short unit-step Newton polish (quadratic local convergence).
  NewtonCGState state;
  state.w = Vector::Zero(problem.dim());
  NewtonCGOptions options;
  options.cg_tolerance = 1e-8;
  options.max_cg = 4 * problem.dim();
  index_t used = newton_cg_solve(state, problem, options, 1e-7, 200);
  if (used > 200) {
    throw std::runtime_error("reference_optimum: Newton-CG did not reach 1e-7");
  }
  for (int polish = 0; polish < 20; ++polish) {
    Vector g = problem.full_gradient(state.w);
    if (g.norm() <= gtol) break;
    CGResult cg = cg_solve(
        [&](const Vector& v) {
          return problem.hessian_vector_product(state.w, problem.all_indices(), v);
        },
        g, 1e-12, 4 * problem.dim());
    state.w += cg.direction;
  }
  if (problem.full_gradient(state.w).norm() > gtol) {
    throw std::runtime_error("reference_optimum: Newton polish did not reach gtol");
  }
  ref.w = std::move(state.w);
  ref.value = problem.full_value(ref.w);
  ref.gradient_norm = problem.full_gradient(ref.w).norm();
  return ref;
}

}  // namespace stochopt
