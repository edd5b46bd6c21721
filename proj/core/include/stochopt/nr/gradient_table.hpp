#pragma once

#include <vector>

#include "stochopt/problems/linear_loss.hpp"
#include "stochopt/problems/problem.hpp"

namespace stochopt {

// Per-component stored gradient information for SAGA/SAG, plus the running
// sum of stored entries.  For linear-prediction losses only the loss
// derivative scalar is stored per component (the feature rows are shared
// with the dataset); the l2 term lambda*w is deterministic across
// components, so the solver adds it to the aggregated direction once.
// Dense per-component vectors are kept otherwise.
class GradientTable {
 public:
  explicit GradientTable(const Problem& problem);

  bool scalar_mode() const { return linear_ != nullptr; }
  index_t size() const { return n_; }
  index_t initialized_count() const { return initialized_count_; }
  bool is_initialized(index_t i) const {
    return present_[static_cast<std::size_t>(i)];
  }

  // Evaluates and stores grad of the loss part of f_i at w; returns the
  // stored (loss-part) gradient value that was replaced, via out params.
  // Cost: one component-gradient evaluation.
  void update_entry(const Vector& w, index_t i);

  // Stored loss-part gradient of component i (zero vector if absent).
  Vector stored_gradient(index_t i) const;

  // Sum of stored loss-part gradients (maintained incrementally).
  const Vector& running_sum() const { return sum_; }

  // Recomputes the sum from the stored entries; used to verify the
  // running-sum invariant.
  Vector recompute_sum() const;

  // Largest relative deviation between the running and recomputed sums.
  double sum_consistency_error() const;

 private:
  const Problem& problem_;
  const LinearLossProblem* linear_;
  index_t n_;
  int d_;
  std::vector<bool> present_;
  std::vector<double> scalars_;
  std::vector<Vector> vectors_;
  Vector sum_;
  index_t initialized_count_ = 0;
};

}  // namespace stochopt
