#include "stochopt/so/cg.hpp"

#include <cmath>
#include <stdexcept>

#include "stochopt/core/errors.hpp"

namespace stochopt {

CGResult cg_solve(const LinearOperator& hv, const Vector& g, double rho,
                  index_t max_cg) {
  if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("cg_solve: rho must lie in (0,1)");
  if (max_cg < 1) throw std::invalid_argument("cg_solve: max_cg must be >= 1");

  const double gnorm = g.norm();
  CGResult res;
  res.direction = Vector::Zero(g.size());
  if (gnorm == 0.0) {
    res.status = CGStatus::Converged;
    return res;
  }
  const double target = rho * gnorm;

  Vector s = Vector::Zero(g.size());
  Vector r = -g;  // residual of H s = -g at s = 0
  Vector p = r;
  double rr = r.squaredNorm();

  for (index_t it = 0; it < max_cg; ++it) {
    Vector hp = hv(p);
    if (!all_finite(hp)) {
      throw DivergedError("curvature operator returned non-finite values", s, it);
    }
    double php = p.dot(hp);
    if (php <= 0.0) {
      // Direction of negative curvature: keep the best iterate so far,
      // falling back to -g when it is the very first direction.
      res.status = CGStatus::NegativeCurvature;
      res.direction = it == 0 ? (-g).eval() : s;
      res.residual_norm = std::sqrt(rr);
      res.iterations = it;
      return res;
    }
    double step = rr / php;
    s += step * p;
    r -= step * hp;
    double rr_next = r.squaredNorm();
    res.iterations = it + 1;
    if (std::sqrt(rr_next) <= target) {
      res.status = CGStatus::Converged;
      res.direction = s;
      res.residual_norm = std::sqrt(rr_next);
      return res;
    }
    p = r + (rr_next / rr) * p;
    rr = rr_next;
  }

  res.status = CGStatus::MaxIterations;
  res.direction = s;
  res.residual_norm = std::sqrt(rr);
  return res;
}

}  // namespace stochopt
