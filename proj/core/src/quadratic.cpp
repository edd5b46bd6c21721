#include "stochopt/problems/quadratic.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <stdexcept>

namespace stochopt {

QuadraticEnsembleProblem::QuadraticEnsembleProblem(std::vector<Matrix> Q,
                                                   std::vector<Vector> m,
                                                   double noise_magnitude)
    : Q_(std::move(Q)), m_(std::move(m)), noise_magnitude_(noise_magnitude) {
  if (Q_.empty() || Q_.size() != m_.size()) {
    throw std::invalid_argument("quadratic ensemble: need matching Q_i, m_i");
  }
  d_ = static_cast<int>(Q_.front().rows());
  Qbar_ = Matrix::Zero(d_, d_);
  Vector rhs = Vector::Zero(d_);
  for (std::size_t i = 0; i < Q_.size(); ++i) {
    if (Q_[i].rows() != d_ || Q_[i].cols() != d_ || m_[i].size() != d_) {
      throw std::invalid_argument("quadratic ensemble: inconsistent dimensions");
    }
    Qbar_ += Q_[i];
    rhs += Q_[i] * m_[i];
  }
  auto n = static_cast<double>(Q_.size());
  Qbar_ /= n;
  rhs /= n;

  Eigen::SelfAdjointEigenSolver<Matrix> eig(Qbar_);
  c_ = eig.eigenvalues().minCoeff();
  L_ = eig.eigenvalues().maxCoeff();
  if (!(c_ > 0.0)) {
    throw std::invalid_argument("quadratic ensemble: average Q must be positive definite");
  }
  wstar_ = Qbar_.ldlt().solve(rhs);
  fstar_ = 0.0;
  for (std::size_t i = 0; i < Q_.size(); ++i) {
    Vector dlt = wstar_ - m_[i];
    fstar_ += 0.5 * dlt.dot(Q_[i] * dlt);
  }
  fstar_ /= n;
}

QuadraticEnsembleProblem QuadraticEnsembleProblem::identity(
    int d, double noise_magnitude) {
  return single(Matrix::Identity(d, d), Vector::Zero(d), noise_magnitude);
}

QuadraticEnsembleProblem QuadraticEnsembleProblem::single(
    Matrix Q, Vector m, double noise_magnitude) {
  std::vector<Matrix> Qs;
  Qs.push_back(std::move(Q));
  std::vector<Vector> ms;
  ms.push_back(std::move(m));
  return QuadraticEnsembleProblem(std::move(Qs), std::move(ms), noise_magnitude);
}

QuadraticEnsembleProblem QuadraticEnsembleProblem::evenly_spaced_1d(index_t n,
                                                                    double q) {
  std::vector<Matrix> Qs;
  std::vector<Vector> ms;
  for (index_t i = 0; i < n; ++i) {
    Matrix Q(1, 1);
    Q(0, 0) = q;
    Vector m(1);
    m(0) = n == 1 ? 0.0
                  : -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(n - 1);
    Qs.push_back(Q);
    ms.push_back(m);
  }
  return QuadraticEnsembleProblem(std::move(Qs), std::move(ms));
}

double QuadraticEnsembleProblem::component_value(const Vector& w,
                                                 index_t i) const {
  auto ii = static_cast<std::size_t>(i);
  Vector dlt = w - m_[ii];
  return 0.5 * dlt.dot(Q_[ii] * dlt);
}

void QuadraticEnsembleProblem::add_component_gradient(const Vector& w,
                                                      index_t i,
                                                      Vector& acc) const {
  auto ii = static_cast<std::size_t>(i);
  acc.noalias() += Q_[ii] * (w - m_[ii]);
}

Vector QuadraticEnsembleProblem::hessian_vector_product(
    const Vector&, std::span<const index_t> batch, const Vector& v) const {
  Vector out = Vector::Zero(d_);
  for (index_t i : batch) out.noalias() += Q_[static_cast<std::size_t>(i)] * v;
  out /= static_cast<double>(batch.size());
  return out;
}

Vector QuadraticEnsembleProblem::curvature_diagonal(
    const Vector&, std::span<const index_t> batch) const {
  Vector diag = Vector::Zero(d_);
  for (index_t i : batch) diag += Q_[static_cast<std::size_t>(i)].diagonal();
  diag /= static_cast<double>(batch.size());
  return diag;
}

double QuadraticEnsembleProblem::max_coordinate_lipschitz() const {
  return Qbar_.diagonal().maxCoeff();
}

}  // namespace stochopt
