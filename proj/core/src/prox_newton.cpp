#include "stochopt/reg/prox_newton.hpp"

#include <cmath>
#include <stdexcept>

#include "stochopt/core/errors.hpp"
#include "stochopt/reg/prox.hpp"

namespace stochopt {

ProxNewtonModel::ProxNewtonModel(Vector center, Vector gradient, Matrix hessian,
                                 double f_center, double lambda1)
    : center_(std::move(center)),
      gradient_(std::move(gradient)),
      H_(std::move(hessian)),
      f_center_(f_center),
      lambda1_(lambda1) {
  double row_norm = H_.cwiseAbs().rowwise().sum().maxCoeff();
  if (!(row_norm > 0.0)) throw std::invalid_argument("prox-newton model: H must be nonzero");
  ista_alpha_ = 1.0 / row_norm;
}

double ProxNewtonModel::value(const Vector& w) const {
  Vector diff = w - center_;
  return f_center_ + gradient_.dot(diff) + 0.5 * diff.dot(H_ * diff) +
         lambda1_ * w.lpNorm<1>();
}

Vector ProxNewtonModel::smooth_gradient(const Vector& w) const {
  return gradient_ + H_ * (w - center_);
}

Vector ProxNewtonModel::ista_point(const Vector& w) const {
  return soft_threshold(w - ista_alpha_ * smooth_gradient(w),
                        ista_alpha_ * lambda1_);
}

double ProxNewtonModel::ista_norm(const Vector& w) const {
  return (ista_point(w) - w).norm();
}

ProxNewtonStepResult prox_newton_step(const Vector& w,
                                      const CompositeL1Problem& problem,
                                      const ProxNewtonModel& model,
                                      const ProxNewtonOptions& options) {
  const int d = static_cast<int>(w.size());
  const double lambda1 = model.l1_weight();
  const Matrix& H = model.hessian();

  double measure_at_center = model.ista_norm(w);
  double eta = options.eta;
  if (options.decreasing_eta) {
    eta = std::min(0.1, std::sqrt(measure_at_center));
  }
  double q_center = model.value(w);
  // Strict decrease with absolute slack 1e-16 (1 + |q(w_k)|).
  double decrease_slack = 1e-16 * (1.0 + std::abs(q_center));

  ProxNewtonStepResult res;
  Vector wt = w;
  Vector gq = model.smooth_gradient(wt);
  bool satisfied = false;

  while (res.coordinate_updates < options.subsolver_budget) {
    // One cyclic sweep of exact coordinate minimization of the model.
    for (int i = 0; i < d; ++i) {
      double hii = H(i, i);
      if (!(hii > 0.0)) continue;
      double target = soft_threshold_scalar(wt[i] - gq[i] / hii, lambda1 / hii);
      double delta = target - wt[i];
      if (delta != 0.0) {
        wt[i] = target;
        gq += delta * H.col(i);
      }
      ++res.coordinate_updates;
    }
    if (model.ista_norm(wt) <= eta * measure_at_center &&
        model.value(wt) < q_center - decrease_slack) {
      satisfied = true;
      break;
    }
  }
  res.inexactness_warning = !satisfied;
  res.subproblem_point = wt;

  // Backtrack on phi along the subproblem direction.
  Vector direction = wt - w;
  double phi0 = problem.value(w);
  double alpha = 1.0;
  for (index_t b = 0; b <= options.max_backtracks; ++b) {
    Vector trial = w + alpha * direction;
    if (problem.value(trial) < phi0) {
      res.w = std::move(trial);
      res.step_size = alpha;
      return res;
    }
    alpha *= options.backtrack;
  }
  throw StepFailureError("prox_newton_step: line search exhausted its backtracks");
}

ProxNewtonModel make_exact_hessian_model(const Vector& w,
                                         const CompositeL1Problem& problem) {
  const Problem& smooth = problem.smooth();
  const int d = smooth.dim();
  Matrix H(d, d);
  Vector e = Vector::Zero(d);
  for (int i = 0; i < d; ++i) {
    e[i] = 1.0;
    H.col(i) = smooth.hessian_vector_product(w, smooth.all_indices(), e);
    e[i] = 0.0;
  }
  H = 0.5 * (H + H.transpose()).eval();
  return ProxNewtonModel(w, smooth.full_gradient(w), std::move(H),
                         smooth.full_value(w), problem.l1_weight());
}

}  // namespace stochopt
