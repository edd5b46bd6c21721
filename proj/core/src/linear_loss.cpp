#include "stochopt/problems/linear_loss.hpp"

#include <cmath>
#include <stdexcept>

namespace stochopt {

double log1p_exp(double t) {
  return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
}

double sigmoid(double t) {
  if (t >= 0.0) {
    return 1.0 / (1.0 + std::exp(-t));
  }
  double e = std::exp(t);
  return e / (1.0 + e);
}

LinearLossProblem::LinearLossProblem(Dataset data, double lambda)
    : data_(std::move(data)), lambda_(lambda), sum_sq_norms_(0.0) {
  if (lambda_ < 0.0) throw std::invalid_argument("lambda must be >= 0");
  for (const SparseRow& r : data_.rows) sum_sq_norms_ += r.squared_norm();
}

double LinearLossProblem::component_value(const Vector& w, index_t i) const {
  return loss_value(margin(w, i), i) + 0.5 * lambda_ * w.squaredNorm();
}

void LinearLossProblem::add_component_gradient(const Vector& w, index_t i,
                                               Vector& acc) const {
  row(i).add_to(acc, loss_derivative(margin(w, i), i));
  if (lambda_ > 0.0) acc += lambda_ * w;
}

double LinearLossProblem::batch_value(const Vector& w,
                                      std::span<const index_t> batch) const {
  double s = 0.0;
  for (index_t i : batch) s += loss_value(margin(w, i), i);
  return s / static_cast<double>(batch.size()) +
         0.5 * lambda_ * w.squaredNorm();
}

Vector LinearLossProblem::batch_gradient(const Vector& w,
                                         std::span<const index_t> batch) const {
  Vector g = Vector::Zero(dim());
  for (index_t i : batch) row(i).add_to(g, loss_derivative(margin(w, i), i));
  g /= static_cast<double>(batch.size());
  if (lambda_ > 0.0) g += lambda_ * w;
  return g;
}

Vector LinearLossProblem::hessian_vector_product(
    const Vector& w, std::span<const index_t> batch, const Vector& v) const {
  Vector out = Vector::Zero(dim());
  for (index_t i : batch) {
    const SparseRow& x = row(i);
    double coef = loss_second_derivative(margin(w, i), i) * x.dot(v);
    x.add_to(out, coef);
  }
  out /= static_cast<double>(batch.size());
  if (lambda_ > 0.0) out += lambda_ * v;
  return out;
}

Vector LinearLossProblem::curvature_diagonal(
    const Vector& w, std::span<const index_t> batch) const {
  Vector diag = Vector::Zero(dim());
  for (index_t i : batch) {
    const SparseRow& x = row(i);
    double phi2 = loss_second_derivative(margin(w, i), i);
    for (int j = 0; j < x.nnz(); ++j) {
      auto jj = static_cast<std::size_t>(j);
      diag[x.idx[jj]] += phi2 * x.val[jj] * x.val[jj];
    }
  }
  diag /= static_cast<double>(batch.size());
  diag.array() += lambda_;
  return diag;
}

double LinearLossProblem::lipschitz_bound() const {
  return lambda_ + loss_curvature_bound() * sum_sq_norms_ /
                       static_cast<double>(data_.n);
}

std::optional<double> LinearLossProblem::strong_convexity() const {
  if (lambda_ > 0.0) return lambda_;
  return std::nullopt;
}

LogisticProblem::LogisticProblem(Dataset data, double lambda)
    : LinearLossProblem(std::move(data), lambda) {
  if (!data_.labels_are_binary()) {
    throw std::invalid_argument(
        "logistic regression requires labels in {-1,+1}");
  }
}

double LogisticProblem::loss_value(double z, index_t i) const {
  return log1p_exp(-label(i) * z);
}

double LogisticProblem::loss_derivative(double z, index_t i) const {
  double y = label(i);
  return -y * sigmoid(-y * z);
}

double LogisticProblem::loss_second_derivative(double z, index_t i) const {
  double s = sigmoid(label(i) * z);
  return s * (1.0 - s);
}

Vector LogisticProblem::gauss_newton_vector_product(
    const Vector& w, std::span<const index_t> batch, const Vector& v,
    GnVariant variant) const {
  const auto b = static_cast<double>(batch.size());
  Vector out = Vector::Zero(dim());
  switch (variant) {
    case GnVariant::Plain:
      throw CapabilityError("plain Gauss-Newton needs a least-squares loss");
    case GnVariant::Generalized: {
      // h = sigma(y z) is the probability of the observed label,
      // loss(h) = -log h, so J_h = h(1-h) y x and H_l = 1/h^2.
      for (index_t i : batch) {
        const SparseRow& x = row(i);
        double h = sigmoid(label(i) * margin(w, i));
        double jac = h * (1.0 - h) * label(i);
        double coef = jac * (1.0 / (h * h)) * jac * x.dot(v);
        x.add_to(out, coef);
      }
      out /= b;
      if (lambda_ > 0.0) out += lambda_ * v;
      return out;
    }
    case GnVariant::LogLossFisher: {
      // (1/|S|) sum_i grad f_i (grad f_i^T v); matrix-free.
      if (lambda_ == 0.0) {
        for (index_t i : batch) {
          const SparseRow& x = row(i);
          double s = loss_derivative(margin(w, i), i);
          x.add_to(out, s * s * x.dot(v));
        }
        out /= b;
        return out;
      }
      Vector gi = Vector::Zero(dim());
      for (index_t i : batch) {
        gi.setZero();
        add_component_gradient(w, i, gi);
        out += gi * gi.dot(v);
      }
      out /= b;
      return out;
    }
  }
  throw CapabilityError("unknown Gauss-Newton variant");
}

LeastSquaresProblem::LeastSquaresProblem(Dataset data, double lambda)
    : LinearLossProblem(std::move(data), lambda) {}

double LeastSquaresProblem::loss_value(double z, index_t i) const {
  double r = z - label(i);
  return 0.5 * r * r;
}

double LeastSquaresProblem::loss_derivative(double z, index_t i) const {
  return z - label(i);
}

Vector LeastSquaresProblem::gauss_newton_vector_product(
    const Vector&, std::span<const index_t> batch, const Vector& v,
    GnVariant variant) const {
  if (variant != GnVariant::Plain) {
    throw CapabilityError("least squares supports the plain Gauss-Newton variant only");
  }
  Vector out = Vector::Zero(dim());
  for (index_t i : batch) {
    const SparseRow& x = row(i);
    x.add_to(out, x.dot(v));
  }
  out /= static_cast<double>(batch.size());
  if (lambda_ > 0.0) out += lambda_ * v;
  return out;
}

}  // namespace stochopt
