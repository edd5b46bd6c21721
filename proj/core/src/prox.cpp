#include "stochopt/reg/prox.hpp"

#include <cmath>
#include <stdexcept>

#include "stochopt/sg/sg.hpp"

namespace stochopt {

double soft_threshold_scalar(double w, double tau) {
  double mag = std::abs(w) - tau;
  return mag > 0.0 ? (w > 0.0 ? mag : -mag) : 0.0;
}

Vector soft_threshold(const Vector& w, double tau) {
  if (!(tau >= 0.0)) throw std::invalid_argument("soft_threshold: tau must be nonnegative");
  Vector out(w.size());
  for (int i = 0; i < w.size(); ++i) out[i] = soft_threshold_scalar(w[i], tau);
  return out;
}

namespace {

Vector smooth_gradient(const CompositeL1Problem& problem, const Vector& w,
                       const Batch* batch) {
  if (batch) return problem.smooth().batch_gradient(w, batch->indices);
  return problem.smooth().full_gradient(w);
}

}  // namespace

Vector ista_step(const Vector& w, const CompositeL1Problem& problem,
                 double alpha, const Batch* batch) {
  if (!(alpha > 0.0)) throw std::invalid_argument("ista_step: alpha must be positive");
  Vector forward = w - alpha * smooth_gradient(problem, w, batch);
  Vector next = soft_threshold(forward, alpha * problem.l1_weight());
  check_finite_step(w, next, 0);
  return next;
}

FistaState FistaState::init(Vector w0) {
  FistaState s;
  s.extrapolated = w0;
  s.w = std::move(w0);
  return s;
}

void fista_step(FistaState& state, const CompositeL1Problem& problem,
                double alpha, bool force_zero_momentum) {
  Vector next = ista_step(state.extrapolated, problem, alpha);
  double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * state.t * state.t));
  double momentum =
      force_zero_momentum ? 0.0 : (state.t - 1.0) / t_next;
  state.extrapolated = next + momentum * (next - state.w);
  state.w = std::move(next);
  state.t = t_next;
  state.k += 1;
}

SplitPair gradient_projection_split_step(const SplitPair& pair,
                                         const CompositeL1Problem& problem,
                                         double alpha) {
  Vector grad = problem.smooth().full_gradient(pair.w());
  double tau = alpha * problem.l1_weight();
  SplitPair next;
  next.u = ((pair.u - alpha * grad).array() - tau).cwiseMax(0.0).matrix();
  next.v = ((pair.v + alpha * grad).array() - tau).cwiseMax(0.0).matrix();
  // Restore complementarity: subtract the common part.
  Vector common = next.u.cwiseMin(next.v);
  next.u -= common;
  next.v -= common;
  return next;
}

double default_prox_stepsize(const CompositeL1Problem& problem) {
  return 1.0 / problem.smooth().lipschitz_bound();
}

double backtracking_prox_stepsize(const Vector& w,
                                  const CompositeL1Problem& problem,
                                  double alpha0) {
  double alpha = alpha0;
  Vector grad = problem.smooth().full_gradient(w);
  double f0 = problem.smooth().full_value(w);
  for (int i = 0; i < 60; ++i) {
    Vector next = soft_threshold(w - alpha * grad, alpha * problem.l1_weight());
    Vector diff = next - w;
    double quad = f0 + grad.dot(diff) + diff.squaredNorm() / (2.0 * alpha);
    if (problem.smooth().full_value(next) <= quad) return alpha;
    alpha *= 0.5;
  }
  return alpha;
}

}  // namespace stochopt
