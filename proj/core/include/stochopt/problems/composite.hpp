#pragma once

#include <memory>

#include "stochopt/problems/problem.hpp"

namespace stochopt {

// phi(w) = F(w) + lambda1 ||w||_1 with smooth finite-sum part F.
class CompositeL1Problem {
 public:
  CompositeL1Problem(std::shared_ptr<const Problem> smooth, double lambda1);

  const Problem& smooth() const { return *smooth_; }
  std::shared_ptr<const Problem> smooth_ptr() const { return smooth_; }
  double l1_weight() const { return lambda1_; }
  int dim() const { return smooth_->dim(); }

  // F(w) + lambda1 * sum_i |w_i|, evaluated exactly as that sum.
  double value(const Vector& w) const;

 private:
  std::shared_ptr<const Problem> smooth_;
  double lambda1_;
};

}  // namespace stochopt
