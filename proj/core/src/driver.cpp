#include "stochopt/harness/driver.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "stochopt/cd/sdca.hpp"
#include "stochopt/core/errors.hpp"
#include "stochopt/nr/dynamic_sampling.hpp"
#include "stochopt/problems/composite.hpp"
#include "stochopt/reg/orthant.hpp"
#include "stochopt/reg/prox.hpp"
#include "stochopt/reg/prox_newton.hpp"

namespace stochopt {

const char* solver_name(const SolverSpec& spec) {
  struct Visitor {
    const char* operator()(const SgSpec& s) const {
      return s.average ? "sg-averaged" : "sg";
    }
    const char* operator()(const MomentumSpec&) const { return "momentum"; }
    const char* operator()(const NesterovSpec&) const { return "nesterov"; }
    const char* operator()(const AdagradSpec&) const { return "adagrad"; }
    const char* operator()(const RmspropSpec&) const { return "rmsprop"; }
    const char* operator()(const DynamicSgSpec&) const { return "dynamic-sg"; }
    const char* operator()(const SvrgSpec&) const { return "svrg"; }
    const char* operator()(const SagaSpec& s) const {
      return s.sag ? "sag" : "saga";
    }
    const char* operator()(const GdSpec&) const { return "gd"; }
    const char* operator()(const NewtonCgSpec&) const { return "newton-cg"; }
    const char* operator()(const SqnSpec&) const { return "sqn"; }
    const char* operator()(const DiagonalSpec&) const { return "diagonal"; }
    const char* operator()(const CdSpec&) const { return "cd"; }
    const char* operator()(const SdcaSpec&) const { return "sdca"; }
    const char* operator()(const ProxSpec& s) const {
      switch (s.method) {
        case ProxMethod::Ista: return "ista";
        case ProxMethod::Fista: return "fista";
        case ProxMethod::Split: return "split";
        case ProxMethod::ProxNewton: return "prox-newton";
        case ProxMethod::Orthant: return "orthant";
      }
      return "prox";
    }
  };
  return std::visit(Visitor{}, spec);
}

namespace {

class TraceBuilder {
 public:
  TraceBuilder(const RunSpec& spec, const Problem& problem)
      : spec_(spec),
        problem_(problem),
        trace_(spec.run_id, spec.config_digest),
        start_(std::chrono::steady_clock::now()) {
    cadence_ = spec.trace_every > 0 ? spec.trace_every
                                    : problem.num_components();
    if (spec.lambda1 > 0.0) {
      composite_.emplace(
          std::shared_ptr<const Problem>(&problem, [](const Problem*) {}),
          spec.lambda1);
    }
  }

  // Records iteration k.  fval/gnorm are evaluated at the configured ADP
  // cadence (always on the first and last record); those evaluations are
  // excluded from the adp counter by construction.
  void record(index_t k, index_t adp, double alpha, index_t batch_size,
              const Vector& w, bool force_metrics = false) {
    if (spec_.record_every > 1 && k % spec_.record_every != 0 && k != 1 &&
        !force_metrics) {
      return;
    }
    TraceRecord rec;
    rec.k = k;
    rec.adp = adp;
    rec.alpha = alpha;
    rec.batch_size = batch_size;
    bool metrics = force_metrics || k == 1 || adp >= next_metrics_adp_;
    if (metrics) {
      rec.fval = objective(w);
      rec.gnorm = optimality(w);
      while (next_metrics_adp_ <= adp) next_metrics_adp_ += cadence_;
    }
    if (spec_.timing) {
      rec.wall_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(
                        std::chrono::steady_clock::now() - start_)
                        .count();
    }
    trace_.push(std::move(rec));
  }

  double objective(const Vector& w) const {
    if (composite_) return composite_->value(w);
    return problem_.full_value(w);
  }

  double optimality(const Vector& w) const {
    Vector g = problem_.full_gradient(w);
    if (composite_) {
      return min_norm_subgradient(w, g, composite_->l1_weight()).norm();
    }
    return g.norm();
  }

  const CompositeL1Problem* composite() const {
    return composite_ ? &*composite_ : nullptr;
  }

  Trace take() { return std::move(trace_); }

 private:
  const RunSpec& spec_;
  const Problem& problem_;
  std::optional<CompositeL1Problem> composite_;
  Trace trace_;
  std::chrono::steady_clock::time_point start_;
  index_t cadence_ = 1;
  index_t next_metrics_adp_ = 1;
};

struct LoopControl {
  index_t max_iterations;
  index_t max_adp;

  bool done(index_t k, index_t adp) const {
    if (k > max_iterations) return true;
    return max_adp > 0 && adp >= max_adp;
  }
};

}  // namespace

RunResult run_solver(const RunSpec& spec) {
  const Problem& problem = *spec.problem;
  RandomStream stream(spec.seed);
  TraceBuilder builder(spec, problem);
  LoopControl control{spec.max_iterations, spec.max_adp};

  RunResult result;
  result.status = "ok";
  Vector w = spec.w0.size() == problem.dim() ? spec.w0
                                             : Vector::Zero(problem.dim());

  try {
    if (const auto* sg = std::get_if<SgSpec>(&spec.solver)) {
      SGState state = SGState::init(w);
      while (!control.done(state.k, state.adp)) {
        double alpha = sg->schedule.at(state.k);
        sg_step(state, problem, sg->schedule, sg->batch_size, stream);
        if (sg->average) update_average(state);
        builder.record(state.k - 1, state.adp, alpha, sg->batch_size, state.w);
      }
      w = sg->average ? state.average : state.w;
    } else if (const auto* mm = std::get_if<MomentumSpec>(&spec.solver)) {
      SGState state = SGState::init(w);
      while (!control.done(state.k, state.adp)) {
        momentum_step(state, problem, mm->alpha, mm->beta, mm->batch_size,
                      stream);
        builder.record(state.k - 1, state.adp, mm->alpha, mm->batch_size,
                       state.w);
      }
      w = state.w;
    } else if (const auto* nv = std::get_if<NesterovSpec>(&spec.solver)) {
      SGState state = SGState::init(w);
      while (!control.done(state.k, state.adp)) {
        nesterov_step(state, problem, nv->alpha, nv->beta, nv->batch_size,
                      stream);
        builder.record(state.k - 1, state.adp, nv->alpha, nv->batch_size,
                       state.w);
      }
      w = state.w;
    } else if (const auto* ad = std::get_if<AdagradSpec>(&spec.solver)) {
      SGState state = SGState::init(w);
      while (!control.done(state.k, state.adp)) {
        adagrad_step(state, problem, ad->alpha, ad->mu_reg, ad->batch_size,
                     stream);
        builder.record(state.k - 1, state.adp, ad->alpha, ad->batch_size,
                       state.w);
      }
      w = state.w;
    } else if (const auto* rp = std::get_if<RmspropSpec>(&spec.solver)) {
      SGState state = SGState::init(w);
      while (!control.done(state.k, state.adp)) {
        rmsprop_step(state, problem, rp->alpha, rp->decay, rp->mu_reg,
                     rp->batch_size, stream);
        builder.record(state.k - 1, state.adp, rp->alpha, rp->batch_size,
                       state.w);
      }
      w = state.w;
    } else if (const auto* dyn = std::get_if<DynamicSgSpec>(&spec.solver)) {
      double tau = dyn->tau;
      if (tau <= 1.0) {
        tau = DynamicSamplingPolicy::max_admissible_tau(
            dyn->alpha, problem.strong_convexity().value_or(1.0), 1.0);
      }
      const index_t n = problem.num_components();
      DynamicSamplingPolicy policy =
          dyn->adaptive ? DynamicSamplingPolicy::adaptive(dyn->chi, tau, n)
                        : DynamicSamplingPolicy::prescribed(tau, n);
      SGState state = SGState::init(w);
      StepsizeSchedule fixed = StepsizeSchedule::fixed(dyn->alpha);
      while (!control.done(state.k, state.adp)) {
        index_t b = dyn->adaptive ? policy.adaptive_size(state.k)
                                  : policy.prescribed_size(state.k);
        if (dyn->adaptive && b >= 2) {
          // Sample variance test on the drawn batch; growth deferred to
          // the next iteration on failure.
          Batch batch = draw_batch(problem, stream, state.k, b,
                                   SamplingMode::WithReplacement);
          std::vector<Vector> grads;
          grads.reserve(static_cast<std::size_t>(b));
          for (index_t i : batch.indices) {
            grads.push_back(problem.component_gradient(state.w, i));
          }
          Vector g = Vector::Zero(problem.dim());
          for (const Vector& gi : grads) g += gi;
          g /= static_cast<double>(b);
          if (!adaptive_norm_test(grads, g, dyn->chi).pass) {
            policy.record_test_failure();
          }
        }
        sg_step(state, problem, fixed, b, stream);
        builder.record(state.k - 1, state.adp, dyn->alpha, b, state.w);
      }
      w = state.w;
    } else if (const auto* sv = std::get_if<SvrgSpec>(&spec.solver)) {
      index_t m = sv->m > 0 ? sv->m : problem.num_components();
      index_t adp = 0;
      index_t k = 1;
      while (!control.done(k, adp)) {
        w = svrg_outer(problem, w, sv->alpha, m, sv->option, stream, k, adp);
        builder.record(k, adp, sv->alpha, 1, w, true);
        ++k;
      }
    } else if (const auto* sg = std::get_if<SagaSpec>(&spec.solver)) {
      double alpha = sg->alpha;
      if (alpha <= 0.0) {
        double L = problem.lipschitz_bound();
        auto c = problem.strong_convexity();
        alpha = c ? saga_stepsize(*c, problem.num_components(), L)
                  : saga_stepsize_unknown_c(L);
      }
      SagaState state(w, problem);
      if (sg->init == SagaInit::FullAtStart) saga_init_full(state, problem);
      while (!control.done(state.k, state.adp)) {
        if (sg->sag) {
          sag_step(state, problem, alpha, stream);
        } else {
          saga_step(state, problem, alpha, stream);
        }
        if ((state.k - 1) % problem.num_components() == 0) {
          builder.record(state.k - 1, state.adp, alpha, 1, state.w);
        }
      }
      w = state.w;
    } else if (const auto* gd = std::get_if<GdSpec>(&spec.solver)) {
      double alpha = gd->alpha > 0.0 ? gd->alpha : 1.0 / problem.lipschitz_bound();
      index_t adp = 0;
      const index_t n = problem.num_components();
      for (index_t k = 1; !control.done(k, adp); ++k) {
        Vector g = problem.full_gradient(w);
        adp += n;
        Vector before = w;
        w -= alpha * g;
        check_finite_step(before, w, k);
        builder.record(k, adp, alpha, n, w);
      }
    } else if (const auto* nc = std::get_if<NewtonCgSpec>(&spec.solver)) {
      NewtonCGState state;
      state.w = w;
      const index_t n = problem.num_components();
      index_t b = nc->batch_size > 0 ? nc->batch_size : n;
      while (!control.done(state.k, state.adp)) {
        Batch batch;
        if (b >= n) {
          batch.k = state.k;
          batch.mode = SamplingMode::WithoutReplacement;
          batch.indices.assign(problem.all_indices().begin(),
                               problem.all_indices().end());
        } else {
          batch = draw_batch(problem, stream, state.k, b,
                             SamplingMode::WithoutReplacement);
        }
        NewtonCGStepInfo info = newton_cg_step(state, problem, batch, nc->options);
        builder.record(state.k - 1, state.adp, info.step_size, b, state.w);
      }
      w = state.w;
    } else if (const auto* sq = std::get_if<SqnSpec>(&spec.solver)) {
      SqnState state(w, sq->options.memory);
      while (!control.done(state.k, state.adp)) {
        double alpha = sq->schedule.at(state.k);
        sqn_step(state, problem, sq->schedule, sq->options, stream);
        builder.record(state.k - 1, state.adp, alpha,
                       sq->options.batch_size, state.w);
      }
      w = state.w;
    } else if (const auto* dg = std::get_if<DiagonalSpec>(&spec.solver)) {
      DiagonalOptions options = dg->options;
      resolve_projection_interval(problem, options);
      DiagonalState state(w, options);
      while (!control.done(state.k, state.adp)) {
        diagonal_curvature_step(state, problem, options, stream);
        builder.record(state.k - 1, state.adp, options.alpha,
                       options.batch_size, state.w);
      }
      w = state.w;
    } else if (const auto* cd = std::get_if<CdSpec>(&spec.solver)) {
      CoordinateDescent solver(spec.problem, cd->rule, cd->mode);
      const index_t d = problem.dim();
      for (index_t k = 1; !control.done(k, solver.feature_touches()); ++k) {
        solver.step(stream);
        if (k % d == 0 || k == spec.max_iterations) {
          builder.record(k, solver.feature_touches(), 0.0, 1,
                         solver.iterate());
        }
      }
      w = solver.iterate();
    } else if (std::get_if<SdcaSpec>(&spec.solver)) {
      Sdca solver(spec.problem);
      const index_t n = problem.num_components();
      for (index_t k = 1; !control.done(k, k); ++k) {
        solver.step(stream);
        if (k % n == 0 || k == spec.max_iterations) {
          builder.record(k, k, 0.0, 1, solver.primal());
        }
      }
      w = solver.primal();
    } else if (const auto* px = std::get_if<ProxSpec>(&spec.solver)) {
      const CompositeL1Problem* composite = builder.composite();
      if (!composite) {
        throw CapabilityError("prox solvers need lambda1 > 0 in the run spec");
      }
      double alpha =
          px->alpha > 0.0 ? px->alpha : default_prox_stepsize(*composite);
      index_t adp = 0;
      const index_t n = problem.num_components();
      switch (px->method) {
        case ProxMethod::Ista: {
          for (index_t k = 1; !control.done(k, adp); ++k) {
            if (px->batch_size > 0) {
              Batch batch = draw_batch(problem, stream, k, px->batch_size,
                                       SamplingMode::WithReplacement);
              w = ista_step(w, *composite, alpha, &batch);
              adp += batch.size();
            } else {
              w = ista_step(w, *composite, alpha);
              adp += n;
            }
            builder.record(k, adp, alpha, px->batch_size > 0 ? px->batch_size : n, w);
          }
          break;
        }
        case ProxMethod::Fista: {
          FistaState state = FistaState::init(w);
          while (!control.done(state.k, adp)) {
            fista_step(state, *composite, alpha);
            adp += n;
            builder.record(state.k - 1, adp, alpha, n, state.w);
          }
          w = state.w;
          break;
        }
        case ProxMethod::Split: {
          SplitPair pair;
          pair.u = w.cwiseMax(0.0);
          pair.v = (-w).cwiseMax(0.0);
          for (index_t k = 1; !control.done(k, adp); ++k) {
            pair = gradient_projection_split_step(pair, *composite, alpha);
            adp += n;
            builder.record(k, adp, alpha, n, pair.w());
          }
          w = pair.w();
          break;
        }
        case ProxMethod::ProxNewton: {
          ProxNewtonOptions options;
          for (index_t k = 1; !control.done(k, adp); ++k) {
            ProxNewtonModel model = make_exact_hessian_model(w, *composite);
            adp += n * (problem.dim() + 1);
            if (model.ista_norm(w) <= 1e-14) {
              result.status = "converged";
              builder.record(k, adp, 0.0, n, w, true);
              break;
            }
            ProxNewtonStepResult res;
            try {
              res = prox_newton_step(w, *composite, model, options);
            } catch (const StepFailureError&) {
              if (!orthant_at_rounding_floor(*composite, w)) throw;
              result.status = "converged";
              builder.record(k, adp, 0.0, n, w, true);
              break;
            }
            w = std::move(res.w);
            builder.record(k, adp, res.step_size, n, w);
          }
          break;
        }
        case ProxMethod::Orthant: {
          OrthantOptions options;
          CurvaturePairStore store(10);
          Vector prev_grad = problem.full_gradient(w);
          adp += n;
          for (index_t k = 1; !control.done(k, adp); ++k) {
            LbfgsHessianOperator bk(store);
            OrthantStepResult res;
            try {
              res = orthant_step(
                  w, *composite, [&](const Vector& v) { return bk.apply(v); },
                  options);
            } catch (const StepFailureError&) {
              // A backtracking stall below the rounding resolution of phi
              // is stationarity.
              if (!orthant_at_rounding_floor(*composite, w)) throw;
              result.status = "converged";
              builder.record(k, adp, 0.0, n, w, true);
              break;
            }
            adp += n;
            if (res.converged) {
              result.status = "converged";
              builder.record(k, adp, res.step_size, n, w, true);
              break;
            }
            Vector grad = problem.full_gradient(res.w);
            adp += n;
            store.offer(res.w - w, grad - prev_grad);
            prev_grad = std::move(grad);
            w = std::move(res.w);
            builder.record(k, adp, res.step_size, n, w);
          }
          break;
        }
      }
    }
  } catch (const DivergedError& e) {
    result.status = "diverged";
    w = e.last_finite_iterate;
  } catch (const StepFailureError&) {
    result.status = "step-failure";
  }

  result.final_iterate = w;
  result.final_value = builder.objective(w);
  result.final_gnorm = builder.optimality(w);
  result.trace = builder.take();
  result.final_adp = result.trace.empty() ? 0 : result.trace.back().adp;
  return result;
}

}  // namespace stochopt
