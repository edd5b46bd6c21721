#include "stochopt/problems/composite.hpp"

#include <stdexcept>

namespace stochopt {

CompositeL1Problem::CompositeL1Problem(std::shared_ptr<const Problem> smooth,
                                       double lambda1)
    : smooth_(std::move(smooth)), lambda1_(lambda1) {
  if (!smooth_) throw std::invalid_argument("composite: smooth part required");
  // lambda1 = 0 reduces the proximal methods to their smooth counterparts.
  if (!(lambda1_ >= 0.0)) {
    throw std::invalid_argument("composite: l1 weight must be nonnegative");
  }
}

double CompositeL1Problem::value(const Vector& w) const {
  return smooth_->full_value(w) + lambda1_ * w.lpNorm<1>();
}

}  // namespace stochopt
