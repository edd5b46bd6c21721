#include "stochopt/cd/coordinate.hpp"

#include <cmath>
#include <stdexcept>

#include "stochopt/core/batch.hpp"
#include "stochopt/core/errors.hpp"

namespace stochopt {

CoordinateDescent::CoordinateDescent(std::shared_ptr<const Problem> problem,
                                     CDRule rule, CDStepMode mode)
    : problem_(std::move(problem)),
      linear_(problem_->as_linear_loss()),
      quadratic_(dynamic_cast<const QuadraticEnsembleProblem*>(problem_.get())),
      rule_(rule),
      mode_(mode),
      d_(problem_->dim()) {
  if (!linear_ && !quadratic_) {
    throw CapabilityError(
        "coordinate descent needs a linear-prediction or quadratic objective");
  }
  if (mode_ == CDStepMode::ExactLineSearch && linear_ &&
      linear_->loss_curvature_bound() != 1.0) {
    throw CapabilityError("exact line search requires a quadratic objective");
  }

  lipschitz_.assign(static_cast<std::size_t>(d_), 0.0);
  if (linear_) {
    columns_ = linear_->data().to_columns();
    double n = static_cast<double>(linear_->num_components());
    double bound = linear_->loss_curvature_bound();
    for (int j = 0; j < d_; ++j) {
      double ssq = 0.0;
      for (double v : columns_[static_cast<std::size_t>(j)].val) ssq += v * v;
      lipschitz_[static_cast<std::size_t>(j)] = bound * ssq / n + linear_->l2_reg();
    }
  } else {
    for (int j = 0; j < d_; ++j) {
      lipschitz_[static_cast<std::size_t>(j)] = quadratic_->average_matrix()(j, j);
    }
  }
  for (double l : lipschitz_) lhat_ = std::max(lhat_, l);

  set_iterate(Vector::Zero(d_));
}

void CoordinateDescent::set_iterate(Vector w) {
  w_ = std::move(w);
  if (linear_) {
    predictions_.resize(linear_->num_components());
    for (index_t i = 0; i < linear_->num_components(); ++i) {
      predictions_[i] = linear_->margin(w_, i);
    }
  } else {
    gradient_cache_ = problem_->full_gradient(w_);
  }
}

double CoordinateDescent::partial_gradient(int j) {
  if (quadratic_) return gradient_cache_[j];
  const auto& col = columns_[static_cast<std::size_t>(j)];
  double n = static_cast<double>(linear_->num_components());
  double s = 0.0;
  for (std::size_t t = 0; t < col.row.size(); ++t) {
    s += linear_->loss_derivative(predictions_[col.row[t]], col.row[t]) *
         col.val[t];
  }
  feature_touches_ += static_cast<index_t>(col.row.size());
  return s / n + linear_->l2_reg() * w_[j];
}

void CoordinateDescent::apply_update(int j, double delta) {
  w_[j] += delta;
  if (quadratic_) {
    gradient_cache_ += delta * quadratic_->average_matrix().col(j);
    feature_touches_ += d_;
  } else {
    const auto& col = columns_[static_cast<std::size_t>(j)];
    for (std::size_t t = 0; t < col.row.size(); ++t) {
      predictions_[col.row[t]] += delta * col.val[t];
    }
    feature_touches_ += static_cast<index_t>(col.row.size());
  }
}

int CoordinateDescent::pick_coordinate(const RandomStream& stream) {
  switch (rule_) {
    case CDRule::Cyclic:
      return static_cast<int>((k_ - 1) % d_);
    case CDRule::ShuffledCyclic: {
      if (order_.empty() || order_pos_ == static_cast<index_t>(order_.size())) {
        ++pass_;
        order_ = sample_permutation(stream, pass_, d_);
        order_pos_ = 0;
      }
      return static_cast<int>(order_[static_cast<std::size_t>(order_pos_++)]);
    }
    case CDRule::UniformRandom:
      return static_cast<int>(stream.at(k_, Purpose::InnerIndex)
                                  .bounded(static_cast<std::uint64_t>(d_)));
    case CDRule::GaussSouthwell: {
      // Largest-magnitude gradient component; ties break to the lowest
      // index for reproducible traces.
      int best = 0;
      double best_mag = -1.0;
      if (quadratic_) {
        for (int j = 0; j < d_; ++j) {
          double mag = std::abs(gradient_cache_[j]);
          if (mag > best_mag) best_mag = mag, best = j;
        }
      } else {
        for (int j = 0; j < d_; ++j) {
          double mag = std::abs(partial_gradient(j));
          if (mag > best_mag) best_mag = mag, best = j;
        }
      }
      return best;
    }
  }
  return 0;
}

int CoordinateDescent::step(const RandomStream& stream) {
  int j = pick_coordinate(stream);
  double gj = partial_gradient(j);
  double delta = 0.0;
  switch (mode_) {
    case CDStepMode::FixedMaxLipschitz:
      delta = -gj / lhat_;
      break;
    case CDStepMode::PerCoordinate:
      delta = -gj / lipschitz_[static_cast<std::size_t>(j)];
      break;
    case CDStepMode::ExactLineSearch:
      // Quadratic objective: the coordinate Hessian equals L_j exactly.
      delta = -gj / lipschitz_[static_cast<std::size_t>(j)];
      break;
  }
  apply_update(j, delta);
  ++k_;
  return j;
}

double CoordinateDescent::cache_consistency_error() const {
  if (quadratic_) {
    Vector fresh = problem_->full_gradient(w_);
    double denom = std::max(1.0, fresh.norm());
    return (fresh - gradient_cache_).norm() / denom;
  }
  double err = 0.0, denom = 1.0;
  for (index_t i = 0; i < linear_->num_components(); ++i) {
    double fresh = linear_->margin(w_, i);
    err = std::max(err, std::abs(fresh - predictions_[i]));
    denom = std::max(denom, std::abs(fresh));
  }
  return err / denom;
}

double CoordinateDescent::objective() const { return problem_->full_value(w_); }

}  // namespace stochopt
