#include "stochopt/nr/gradient_table.hpp"

#include <algorithm>
#include <cmath>

namespace stochopt {

GradientTable::GradientTable(const Problem& problem)
    : problem_(problem),
      linear_(problem.as_linear_loss()),
      n_(problem.num_components()),
      d_(problem.dim()),
      present_(static_cast<std::size_t>(n_), false),
      sum_(Vector::Zero(problem.dim())) {
  if (linear_) {
    scalars_.assign(static_cast<std::size_t>(n_), 0.0);
  } else {
    vectors_.assign(static_cast<std::size_t>(n_), Vector::Zero(d_));
  }
}

void GradientTable::update_entry(const Vector& w, index_t i) {
  auto ii = static_cast<std::size_t>(i);
  if (!present_[ii]) {
    present_[ii] = true;
    ++initialized_count_;
  }
  if (linear_) {
    double fresh = linear_->loss_derivative(linear_->margin(w, i), i);
    double old = scalars_[ii];
    scalars_[ii] = fresh;
    linear_->row(i).add_to(sum_, fresh - old);
  } else {
    // Loss part == full component gradient for non-linear-loss problems.
    Vector fresh = problem_.component_gradient(w, i);
    sum_ += fresh - vectors_[ii];
    vectors_[ii] = std::move(fresh);
  }
}

Vector GradientTable::stored_gradient(index_t i) const {
  auto ii = static_cast<std::size_t>(i);
  if (!present_[ii]) return Vector::Zero(d_);
  if (linear_) {
    Vector g = Vector::Zero(d_);
    linear_->row(i).add_to(g, scalars_[ii]);
    return g;
  }
  return vectors_[ii];
}

Vector GradientTable::recompute_sum() const {
  Vector s = Vector::Zero(d_);
  for (index_t i = 0; i < n_; ++i) {
    auto ii = static_cast<std::size_t>(i);
    if (!present_[ii]) continue;
    if (linear_) {
      linear_->row(i).add_to(s, scalars_[ii]);
    } else {
      s += vectors_[ii];
    }
  }
  return s;
}

double GradientTable::sum_consistency_error() const {
  Vector fresh = recompute_sum();
  double denom = std::max(1.0, fresh.norm());
  return (fresh - sum_).norm() / denom;
}

}  // namespace stochopt
