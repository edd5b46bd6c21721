#pragma once

#include <deque>
#include <vector>

#include "stochopt/core/types.hpp"

namespace stochopt {

struct CurvaturePair {
  Vector s;  // iterate displacement
  Vector v;  // gradient (or Hessian-action) displacement
};

// Ordered store of at most m displacement pairs; the eldest is evicted
// first.  Pairs with s^T v <= 0 are rejected (counted), keeping every
// stored pair safe for BFGS updating.
class CurvaturePairStore {
 public:
  explicit CurvaturePairStore(index_t memory);

  // Returns false (and counts a skip) when s^T v <= 0.
  bool offer(Vector s, Vector v);

  index_t size() const { return static_cast<index_t>(pairs_.size()); }
  bool empty() const { return pairs_.empty(); }
  index_t memory() const { return memory_; }
  index_t skipped() const { return skipped_; }
  const CurvaturePair& pair(index_t i) const {
    return pairs_[static_cast<std::size_t>(i)];
  }

  // s^T v / v^T v of the most recent pair; 1 while the store is empty.
  double initial_scaling() const;

 private:
  index_t memory_;
  std::deque<CurvaturePair> pairs_;
  index_t skipped_ = 0;
};

// Applies the L-BFGS inverse-Hessian operator H_k (built from the stored
// pairs over gamma_k * I) to g via the two-loop recursion.  An empty store
// returns g unchanged.
Vector two_loop_direction(const CurvaturePairStore& store, const Vector& g);

// Applies the direct L-BFGS Hessian approximation B_k (the inverse of the
// two-loop operator) to vectors.  Built from the same pairs over
// (1/gamma_k) * I via the recursive BFGS update; products cost O(m d).
// Used where a model Hessian is needed (orthant-based and proximal
// Newton solvers).
class LbfgsHessianOperator {
 public:
  explicit LbfgsHessianOperator(const CurvaturePairStore& store);

  Vector apply(const Vector& v) const;
  int dim() const { return dim_; }

 private:
  int dim_ = 0;
  double inv_gamma_ = 1.0;
  std::vector<Vector> s_;
  std::vector<Vector> v_;
  std::vector<Vector> bs_;      // B_j s_j
  std::vector<double> sbs_;     // s_j^T B_j s_j
  std::vector<double> vs_;      // v_j^T s_j
};

}  // namespace stochopt
