#include "stochopt/reg/orthant.hpp"

#include <cmath>
#include <limits>

#include "stochopt/core/errors.hpp"
#include "stochopt/so/lbfgs.hpp"

namespace stochopt {

Vector min_norm_subgradient(const Vector& w, const Vector& grad_f,
                            double lambda) {
  Vector g(w.size());
  for (int i = 0; i < w.size(); ++i) {
    if (w[i] > 0.0 || (w[i] == 0.0 && grad_f[i] + lambda < 0.0)) {
      g[i] = grad_f[i] + lambda;
    } else if (w[i] < 0.0 || (w[i] == 0.0 && grad_f[i] - lambda > 0.0)) {
      g[i] = grad_f[i] - lambda;
    } else {
      g[i] = 0.0;
    }
  }
  return g;
}

OrthantContext build_orthant_context(const Vector& w, const Vector& grad_f,
                                     double lambda) {
  OrthantContext ctx;
  ctx.min_norm_subgrad = min_norm_subgradient(w, grad_f, lambda);
  ctx.sign.resize(w.size());
  for (int i = 0; i < w.size(); ++i) {
    if (w[i] != 0.0) {
      ctx.sign[i] = w[i] > 0.0 ? 1.0 : -1.0;
    } else {
      double s = -ctx.min_norm_subgrad[i];
      ctx.sign[i] = s > 0.0 ? 1.0 : (s < 0.0 ? -1.0 : 0.0);
    }
    if (w[i] == 0.0 && std::abs(grad_f[i]) <= lambda) {
      ctx.active.push_back(i);
    } else {
      ctx.free_vars.push_back(i);
    }
  }
  return ctx;
}

Vector project_to_orthant(const Vector& w, const Vector& sign) {
  Vector out(w.size());
  for (int i = 0; i < w.size(); ++i) {
    double s = w[i] > 0.0 ? 1.0 : (w[i] < 0.0 ? -1.0 : 0.0);
    out[i] = (s == sign[i]) ? w[i] : 0.0;
  }
  return out;
}

OrthantStepResult orthant_step(const Vector& w,
                               const CompositeL1Problem& problem,
                               const LinearOperator& hessian,
                               const OrthantOptions& options) {
  Vector grad_f = problem.smooth().full_gradient(w);
  OrthantContext ctx = build_orthant_context(w, grad_f, problem.l1_weight());

  OrthantStepResult res;
  res.subgradient_norm = ctx.min_norm_subgrad.norm();
  if (res.subgradient_norm <= options.convergence_tol) {
    res.w = w;
    res.converged = true;
    return res;
  }

  // Mask to the free variables: active coordinates stay at zero.
  Vector mask = Vector::Zero(w.size());
  for (int i : ctx.free_vars) mask[i] = 1.0;
  LinearOperator masked = [&](const Vector& v) {
    Vector mv = mask.cwiseProduct(v);
    return mask.cwiseProduct(hessian(mv)).eval();
  };
  Vector g_free = mask.cwiseProduct(ctx.min_norm_subgrad);

  CGResult cg = cg_solve(masked, g_free, options.cg_tolerance, options.max_cg);
  const Vector& d = cg.direction;

  double phi0 = problem.value(w);
  double alpha = 1.0;
  for (index_t b = 0; b <= options.max_backtracks; ++b) {
    Vector trial = project_to_orthant(w + alpha * d, ctx.sign);
    if (problem.value(trial) < phi0) {
      res.w = std::move(trial);
      res.step_size = alpha;
      return res;
    }
    alpha *= options.backtrack;
  }
  throw StepFailureError("orthant_step: line search exhausted its backtracks");
}

bool orthant_at_rounding_floor(const CompositeL1Problem& problem,
                               const Vector& w) {
  const Problem& smooth = problem.smooth();
  Vector ghat =
      min_norm_subgradient(w, smooth.full_gradient(w), problem.l1_weight());
  double floor = 16.0 * std::numeric_limits<double>::epsilon() *
                 (1.0 + std::abs(problem.value(w))) * smooth.lipschitz_bound();
  return ghat.squaredNorm() <= floor;
}

OrthantSolveResult orthant_solve(const CompositeL1Problem& problem, Vector w0,
                                 OrthantCurvature curvature, double tol,
                                 index_t max_iterations,
                                 const OrthantOptions& options) {
  const Problem& smooth = problem.smooth();
  OrthantOptions opts = options;
  opts.convergence_tol = tol;

  CurvaturePairStore store(10);
  Vector prev_grad = smooth.full_gradient(w0);

  OrthantSolveResult out;
  out.w = std::move(w0);

  for (index_t it = 1; it <= max_iterations; ++it) {
    LinearOperator hess;
    LbfgsHessianOperator bk(store);
    if (curvature == OrthantCurvature::ExactHessian) {
      hess = [&](const Vector& v) {
        return smooth.hessian_vector_product(out.w, smooth.all_indices(), v);
      };
    } else {
      hess = [&](const Vector& v) { return bk.apply(v); };
    }

    OrthantStepResult step;
    try {
      step = orthant_step(out.w, problem, hess, opts);
    } catch (const StepFailureError&) {
      if (orthant_at_rounding_floor(problem, out.w)) {
        out.iterations = it;
        out.converged = true;
        return out;
      }
      throw;
    }
    out.iterations = it;
    if (step.converged) {
      out.w = std::move(step.w);
      out.converged = true;
      return out;
    }
    if (curvature == OrthantCurvature::LbfgsPairs) {
      Vector grad = smooth.full_gradient(step.w);
      store.offer(step.w - out.w, grad - prev_grad);
      prev_grad = std::move(grad);
    }
    out.w = std::move(step.w);
  }
  return out;
}

}  // namespace stochopt
