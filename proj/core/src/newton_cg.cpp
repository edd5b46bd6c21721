#include "stochopt/so/newton_cg.hpp"

#include <cmath>
#include <vector>

#include "stochopt/core/errors.hpp"
#include "stochopt/sg/sg.hpp"

namespace stochopt {

LinearOperator make_curvature_operator(const Problem& problem, const Vector& w,
                                       std::span<const index_t> batch,
                                       CurvatureKind kind,
                                       double regularization) {
  switch (kind) {
    case CurvatureKind::Hessian:
      return [&problem, &w, batch](const Vector& v) {
        return problem.hessian_vector_product(w, batch, v);
      };
    case CurvatureKind::GaussNewton:
      return [&problem, &w, batch, regularization](const Vector& v) {
        Vector out =
            problem.gauss_newton_vector_product(w, batch, v, GnVariant::Plain);
        out += regularization * v;
        return out;
      };
    case CurvatureKind::GeneralizedGaussNewton:
      return [&problem, &w, batch, regularization](const Vector& v) {
        Vector out = problem.gauss_newton_vector_product(w, batch, v,
                                                         GnVariant::Generalized);
        out += regularization * v;
        return out;
      };
    case CurvatureKind::Fisher:
      return [&problem, &w, batch, regularization](const Vector& v) {
        Vector out = problem.gauss_newton_vector_product(
            w, batch, v, GnVariant::LogLossFisher);
        out += regularization * v;
        return out;
      };
  }
  throw CapabilityError("unknown curvature kind");
}

NewtonCGStepInfo newton_cg_step(NewtonCGState& state, const Problem& problem,
                                const Batch& gradient_batch,
                                const NewtonCGOptions& options) {
  std::span<const index_t> grad_ids(gradient_batch.indices);
  auto h_size = static_cast<index_t>(std::ceil(
      options.hessian_batch_ratio * static_cast<double>(grad_ids.size())));
  h_size = std::max<index_t>(1, std::min<index_t>(h_size, gradient_batch.size()));
  std::span<const index_t> hess_ids = grad_ids.subspan(0, static_cast<std::size_t>(h_size));

  Vector g = problem.batch_gradient(state.w, grad_ids);
  state.adp += gradient_batch.size();

  index_t cg_count = 0;
  auto base = make_curvature_operator(problem, state.w, hess_ids,
                                      options.curvature, options.gn_regularization);
  LinearOperator counted = [&](const Vector& v) {
    ++cg_count;
    return base(v);
  };
  CGResult cg = cg_solve(counted, g, options.cg_tolerance, options.max_cg);
  state.adp += cg_count * h_size;
  if (cg.status == CGStatus::NegativeCurvature) {
    ++state.negative_curvature_events;
  }
  const Vector& s = cg.direction;

  double f0 = problem.batch_value(state.w, grad_ids);
  double slope = g.dot(s);
  double alpha = 1.0;
  Vector trial;
  bool accepted = false;
  for (index_t b = 0; b <= options.max_backtracks; ++b) {
    trial = state.w + alpha * s;
    double ft = problem.batch_value(trial, grad_ids);
    if (ft <= f0 + options.armijo_c * alpha * slope) {
      accepted = true;
      break;
    }
    alpha *= options.backtrack;
  }
  if (!accepted) {
    throw StepFailureError("newton_cg_step: line search exhausted its backtracks");
  }

  check_finite_step(state.w, trial, state.k);
  state.w = std::move(trial);
  state.k += 1;

  NewtonCGStepInfo info;
  info.step_size = alpha;
  info.cg_iterations = cg.iterations;
  info.cg_status = cg.status;
  info.directional_derivative = slope;
  return info;
}

index_t newton_cg_solve(NewtonCGState& state, const Problem& problem,
                        const NewtonCGOptions& options, double gtol,
                        index_t max_iterations) {
  Batch full;
  full.mode = SamplingMode::WithoutReplacement;
  full.indices.assign(problem.all_indices().begin(),
                      problem.all_indices().end());
  for (index_t it = 1; it <= max_iterations; ++it) {
    if (problem.full_gradient(state.w).norm() <= gtol) return it - 1;
    full.k = state.k;
    newton_cg_step(state, problem, full, options);
  }
  if (problem.full_gradient(state.w).norm() <= gtol) return max_iterations;
  return max_iterations + 1;
}

}  // namespace stochopt
