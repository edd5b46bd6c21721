#pragma once

#include "stochopt/problems/problem.hpp"

namespace stochopt {

// Nonconvex test function F(w) = (w1^2 - 1)^2 + w2^2 with minima at
// (+-1, 0) and F_inf = 0.  The gradient is Lipschitz on the box
// |w_i| <= radius with L = max(12 radius^2 - 4, 2); runs project iterates
// back onto the box (counted by the caller) to keep the bound valid.
class Quartic2dProblem final : public Problem {
 public:
  explicit Quartic2dProblem(double noise_magnitude = 0.0, double radius = 2.0);

  int dim() const override { return 2; }
  index_t num_components() const override { return 1; }
  double component_value(const Vector& w, index_t i) const override;
  void add_component_gradient(const Vector& w, index_t i,
                              Vector& acc) const override;
  Vector hessian_vector_product(const Vector& w, std::span<const index_t> batch,
                                const Vector& v) const override;

  double lipschitz_bound() const override;
  std::optional<double> known_optimal_value() const override { return 0.0; }
  double noise_magnitude() const override { return noise_magnitude_; }

  double radius() const { return radius_; }
  // Clamps w onto the box; returns true if any coordinate moved.
  bool project_to_domain(Vector& w) const;

 private:
  double noise_magnitude_;
  double radius_;
};

}  // namespace stochopt
