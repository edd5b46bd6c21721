#pragma once

#include <memory>
#include <vector>

#include "stochopt/core/rng.hpp"
#include "stochopt/problems/linear_loss.hpp"
#include "stochopt/problems/quadratic.hpp"

namespace stochopt {

enum class CDRule { Cyclic, ShuffledCyclic, UniformRandom, GaussSouthwell };

enum class CDStepMode {
  FixedMaxLipschitz,  // alpha = 1/Lhat
  PerCoordinate,      // alpha = 1/L_i
  ExactLineSearch,    // quadratic objectives only
};

// Coordinate descent over either a linear-prediction finite sum (with a
// prediction cache z = Xw updated at cost nnz(column)) or a quadratic
// ensemble (with a full-gradient cache updated from a column of the
// average matrix).  One step changes exactly one coordinate of w.
class CoordinateDescent {
 public:
  CoordinateDescent(std::shared_ptr<const Problem> problem, CDRule rule,
                    CDStepMode mode);

  // Performs one coordinate update; returns the coordinate touched.
  int step(const RandomStream& stream);

  const Vector& iterate() const { return w_; }
  void set_iterate(Vector w);

  index_t iterations() const { return k_ - 1; }
  // Cost accounting: feature touches accumulated by gradient evaluation
  // and cache updates (nnz of visited columns, d for dense quadratics).
  index_t feature_touches() const { return feature_touches_; }

  double coordinate_lipschitz(int i) const {
    return lipschitz_[static_cast<std::size_t>(i)];
  }
  double max_coordinate_lipschitz() const { return lhat_; }

  // Relative deviation between the incremental cache and a from-scratch
  // recomputation; the run drivers re-verify this once per pass.
  double cache_consistency_error() const;

  double objective() const;

 private:
  int pick_coordinate(const RandomStream& stream);
  double partial_gradient(int j);
  void apply_update(int j, double delta);

  std::shared_ptr<const Problem> problem_;
  const LinearLossProblem* linear_;
  const QuadraticEnsembleProblem* quadratic_;
  CDRule rule_;
  CDStepMode mode_;
  int d_;

  Vector w_;
  index_t k_ = 1;
  index_t feature_touches_ = 0;

  std::vector<double> lipschitz_;
  double lhat_ = 0.0;

  // Linear backend: columns of X and the prediction cache z = Xw.
  std::vector<Dataset::Column> columns_;
  Vector predictions_;

  // Quadratic backend: cached full gradient.
  Vector gradient_cache_;

  std::vector<index_t> order_;
  index_t order_pos_ = 0;
  index_t pass_ = 0;
};

}  // namespace stochopt
