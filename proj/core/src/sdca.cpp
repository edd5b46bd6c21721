#include "stochopt/cd/sdca.hpp"

#include "stochopt/core/errors.hpp"

namespace stochopt {

Sdca::Sdca(std::shared_ptr<const Problem> problem) : holder_(std::move(problem)) {
  problem_ = dynamic_cast<const LeastSquaresProblem*>(holder_.get());
  if (!problem_) {
    throw CapabilityError("sdca supports the squared loss only");
  }
  lambda_ = problem_->l2_reg();
  if (!(lambda_ > 0.0)) {
    throw CapabilityError("sdca requires lambda > 0");
  }
  n_ = problem_->num_components();
  v_ = Vector::Zero(n_);
  w_ = Vector::Zero(problem_->dim());
}

void Sdca::step(const RandomStream& stream) {
  auto j = static_cast<index_t>(stream.at(k_, Purpose::InnerIndex)
                                    .bounded(static_cast<std::uint64_t>(n_)));
  const SparseRow& x = problem_->row(j);
  double ln = lambda_ * static_cast<double>(n_);
  // Exact maximizer of the dual in coordinate v_j for the squared-loss
  // conjugate phi*(u) = u y + u^2/2.
  double delta =
      (problem_->label(j) - x.dot(w_) - v_[j]) / (1.0 + x.squared_norm() / ln);
  v_[j] += delta;
  x.add_to(w_, delta / ln);
  ++k_;
}

double Sdca::primal_value() const { return problem_->full_value(w_); }

double Sdca::dual_value() const {
  double sum = 0.0;
  for (index_t j = 0; j < n_; ++j) {
    sum += v_[j] * problem_->label(j) - 0.5 * v_[j] * v_[j];
  }
  return sum / static_cast<double>(n_) - 0.5 * lambda_ * w_.squaredNorm();
}

double Sdca::primal_consistency_error() const {
  Vector fresh = Vector::Zero(w_.size());
  double ln = lambda_ * static_cast<double>(n_);
  for (index_t j = 0; j < n_; ++j) {
    problem_->row(j).add_to(fresh, v_[j] / ln);
  }
  double denom = std::max(1.0, fresh.norm());
  return (fresh - w_).norm() / denom;
}

}  // namespace stochopt
