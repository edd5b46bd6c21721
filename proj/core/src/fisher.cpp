#include "stochopt/so/fisher.hpp"

#include <stdexcept>

namespace stochopt {

LinearOperator make_fisher_operator(const Problem& problem, const Vector& w,
                                    std::span<const index_t> batch) {
  return [&problem, &w, batch](const Vector& v) {
    return problem.gauss_newton_vector_product(w, batch, v,
                                               GnVariant::LogLossFisher);
  };
}

Vector empirical_fisher_direction(const Problem& problem, const Vector& w,
                                  std::span<const index_t> batch,
                                  const Vector& g, double mu_reg,
                                  double cg_tolerance, index_t max_cg) {
  if (!(mu_reg > 0.0)) {
    throw std::invalid_argument("empirical_fisher_direction: mu_reg must be positive");
  }
  LinearOperator fisher = make_fisher_operator(problem, w, batch);
  LinearOperator regularized = [&](const Vector& v) {
    Vector out = fisher(v);
    out += mu_reg * v;
    return out;
  };
  // cg_solve solves H s = -g; negate to obtain p with (G~ + mu I) p = g.
  CGResult res = cg_solve(regularized, g, cg_tolerance, max_cg);
  return -res.direction;
}

}  // namespace stochopt
