#pragma once

#include <vector>

#include "stochopt/problems/problem.hpp"

namespace stochopt {

// n component quadratics f_i(w) = 1/2 (w - m_i)^T Q_i (w - m_i), each
// Q_i symmetric positive semidefinite with the average positive definite.
// Constants are closed-form: c / L are the extreme eigenvalues of the
// average Q, and (w_*, F_*) solve the averaged normal equations.  An
// optional additive-noise oracle of magnitude M realizes gradient noise
// with covariance (M/d) I.
class QuadraticEnsembleProblem final : public Problem {
 public:
  QuadraticEnsembleProblem(std::vector<Matrix> Q, std::vector<Vector> m,
                           double noise_magnitude = 0.0);

  // Single component 1/2 ||w||^2 in dimension d (c = L = 1).
  static QuadraticEnsembleProblem identity(int d, double noise_magnitude = 0.0);

  // Single component with the given SPD matrix and minimizer.
  static QuadraticEnsembleProblem single(Matrix Q, Vector m,
                                         double noise_magnitude = 0.0);

  // n scalar quadratics (1/2) q (w - m_i)^2 with minimizers evenly
  // distributed in [-1, 1]; the average minimizer is 0.
  static QuadraticEnsembleProblem evenly_spaced_1d(index_t n, double q = 1.0);

  int dim() const override { return d_; }
  index_t num_components() const override {
    return static_cast<index_t>(Q_.size());
  }
  double component_value(const Vector& w, index_t i) const override;
  void add_component_gradient(const Vector& w, index_t i,
                              Vector& acc) const override;
  Vector hessian_vector_product(const Vector& w, std::span<const index_t> batch,
                                const Vector& v) const override;
  Vector curvature_diagonal(const Vector& w,
                            std::span<const index_t> batch) const override;

  double lipschitz_bound() const override { return L_; }
  std::optional<double> strong_convexity() const override { return c_; }
  std::optional<double> known_optimal_value() const override { return fstar_; }
  const Vector* known_minimizer() const override { return &wstar_; }
  double noise_magnitude() const override { return noise_magnitude_; }

  const Matrix& component_matrix(index_t i) const {
    return Q_[static_cast<std::size_t>(i)];
  }
  const Matrix& average_matrix() const { return Qbar_; }
  // max_i [Qbar]_ii, the coordinate-wise Lipschitz bound used by CD.
  double max_coordinate_lipschitz() const;

 private:
  int d_;
  std::vector<Matrix> Q_;
  std::vector<Vector> m_;
  double noise_magnitude_;
  Matrix Qbar_;
  Vector wstar_;
  double fstar_;
  double c_;
  double L_;
};

}  // namespace stochopt
