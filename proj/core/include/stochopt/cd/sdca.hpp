#pragma once

#include <memory>

#include "stochopt/core/rng.hpp"
#include "stochopt/problems/linear_loss.hpp"

namespace stochopt {

// Stochastic dual coordinate ascent for ridge regression (squared loss,
// lambda > 0), where the conjugate loss has closed form and each dual
// coordinate can be maximized exactly.  The implied primal iterate
// w = (1/(lambda n)) sum_j v_j x_j is maintained incrementally.
class Sdca {
 public:
  explicit Sdca(std::shared_ptr<const Problem> problem);

  // Picks j uniformly and maximizes the dual in coordinate v_j.
  void step(const RandomStream& stream);

  const Vector& primal() const { return w_; }
  const Vector& dual() const { return v_; }
  index_t iterations() const { return k_ - 1; }

  double primal_value() const;
  double dual_value() const;
  double duality_gap() const { return primal_value() - dual_value(); }

  // Relative deviation of the incremental primal from recomputation.
  double primal_consistency_error() const;

 private:
  std::shared_ptr<const Problem> holder_;
  const LeastSquaresProblem* problem_;
  double lambda_;
  index_t n_;
  Vector v_;
  Vector w_;
  index_t k_ = 1;
};

}  // namespace stochopt
