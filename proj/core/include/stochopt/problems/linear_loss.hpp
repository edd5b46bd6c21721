#pragma once

#include "stochopt/problems/dataset.hpp"
#include "stochopt/problems/problem.hpp"

namespace stochopt {

// Objectives of the form f_i(w) = phi(x_i^T w; y_i) + (lambda/2) ||w||^2
// with a scalar loss phi.  The shared structure enables sparse batch
// reductions, scalar gradient storage (the loss part of grad f_i is
// phi'(z_i) x_i) and cheap coordinate-wise residual updates.
class LinearLossProblem : public Problem {
 public:
  LinearLossProblem(Dataset data, double lambda);

  const Dataset& data() const { return data_; }
  double l2_reg() const { return lambda_; }

  double margin(const Vector& w, index_t i) const {
    return row(i).dot(w);
  }
  const SparseRow& row(index_t i) const {
    return data_.rows[static_cast<std::size_t>(i)];
  }
  double label(index_t i) const {
    return data_.labels[static_cast<std::size_t>(i)];
  }

  // phi, phi' and phi'' as functions of the prediction z = x_i^T w.
  virtual double loss_value(double z, index_t i) const = 0;
  virtual double loss_derivative(double z, index_t i) const = 0;
  virtual double loss_second_derivative(double z, index_t i) const = 0;
  // sup of phi'' (1/4 for the log loss, 1 for squared loss).
  virtual double loss_curvature_bound() const = 0;

  int dim() const override { return data_.d; }
  index_t num_components() const override { return data_.n; }
  double component_value(const Vector& w, index_t i) const override;
  void add_component_gradient(const Vector& w, index_t i,
                              Vector& acc) const override;
  double batch_value(const Vector& w,
                     std::span<const index_t> batch) const override;
  Vector batch_gradient(const Vector& w,
                        std::span<const index_t> batch) const override;
  Vector hessian_vector_product(const Vector& w, std::span<const index_t> batch,
                                const Vector& v) const override;
  Vector curvature_diagonal(const Vector& w,
                            std::span<const index_t> batch) const override;

  // lambda + sup(phi'') * (1/n) sum_i ||x_i||^2; always an upper bound.
  double lipschitz_bound() const override;
  std::optional<double> strong_convexity() const override;

  const LinearLossProblem* as_linear_loss() const override { return this; }

  double sum_row_squared_norms() const { return sum_sq_norms_; }

 protected:
  Dataset data_;
  double lambda_;
  double sum_sq_norms_;
};

class LogisticProblem final : public LinearLossProblem {
 public:
  // Requires labels in {-1,+1}; others are rejected, not coerced.
  LogisticProblem(Dataset data, double lambda);

  double loss_value(double z, index_t i) const override;
  double loss_derivative(double z, index_t i) const override;
  double loss_second_derivative(double z, index_t i) const override;
  double loss_curvature_bound() const override { return 0.25; }

  // Generalized: J_h^T H_l J_h with h the model probability of the
  // observed label and l = -log(h).  LogLossFisher: component-gradient
  // outer products.  The two coincide for the unregularized log loss.
  Vector gauss_newton_vector_product(const Vector& w,
                                     std::span<const index_t> batch,
                                     const Vector& v,
                                     GnVariant variant) const override;
};

class LeastSquaresProblem final : public LinearLossProblem {
 public:
  LeastSquaresProblem(Dataset data, double lambda);

  double loss_value(double z, index_t i) const override;
  double loss_derivative(double z, index_t i) const override;
  double loss_second_derivative(double, index_t) const override { return 1.0; }
  double loss_curvature_bound() const override { return 1.0; }

  Vector gauss_newton_vector_product(const Vector& w,
                                     std::span<const index_t> batch,
                                     const Vector& v,
                                     GnVariant variant) const override;
};

// Numerically stable log(1 + exp(t)) and 1/(1+exp(-t)).
double log1p_exp(double t);
double sigmoid(double t);

}  // namespace stochopt
