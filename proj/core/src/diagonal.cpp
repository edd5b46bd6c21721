#include "stochopt/so/diagonal.hpp"

#include <algorithm>
#include <stdexcept>

#include "stochopt/sg/sg.hpp"

namespace stochopt {

void resolve_projection_interval(const Problem& problem,
                                 DiagonalOptions& options) {
  if (options.proj_lo > 0.0 && options.proj_hi >= options.proj_lo) return;
  double lhat = problem.lipschitz_bound();
  options.proj_lo = 1e-3 * lhat;
  options.proj_hi = 1e3 * lhat;
}

DiagonalState::DiagonalState(Vector w0, const DiagonalOptions& options)
    : w(std::move(w0)) {
  if (options.variant == DiagonalVariant::GnRunningAverage) {
    estimate = Vector::Zero(w.size());
  } else {
    if (!(options.proj_lo > 0.0)) {
      throw std::invalid_argument(
          "diagonal ratio variants need a resolved projection interval");
    }
    estimate = Vector::Constant(w.size(), options.proj_lo);
  }
}

void diagonal_curvature_step(DiagonalState& state, const Problem& problem,
                             const DiagonalOptions& options,
                             const RandomStream& stream) {
  Batch batch =
      draw_batch(problem, stream, state.k, options.batch_size, options.mode);
  Vector g = stochastic_gradient(problem, state.w, batch, stream, state.k);
  state.adp += batch.size();

  if (options.variant == DiagonalVariant::GnRunningAverage) {
    Vector diag = problem.curvature_diagonal(state.w, batch.indices);
    state.estimate =
        (1.0 - options.averaging) * state.estimate + options.averaging * diag;
  }

  Vector before = state.w;
  for (int j = 0; j < g.size(); ++j) {
    state.w[j] -= options.alpha / (state.estimate[j] + options.mu_reg) * g[j];
  }
  check_finite_step(before, state.w, state.k);

  if (options.variant != DiagonalVariant::GnRunningAverage) {
    // Displacement pair with the same batch; additive noise cancels.
    Vector v = problem.batch_gradient(state.w, batch.indices) -
               problem.batch_gradient(before, batch.indices);
    state.adp += batch.size();
    for (int j = 0; j < g.size(); ++j) {
      double s_j = state.w[j] - before[j];
      if (s_j == 0.0) continue;  // ratio undefined; update skipped
      double ratio =
          std::clamp(v[j] / s_j, options.proj_lo, options.proj_hi);
      if (options.variant == DiagonalVariant::RatioAverage) {
        state.estimate[j] = (1.0 - options.averaging) * state.estimate[j] +
                            options.averaging * ratio;
      } else {
        state.estimate[j] += ratio;
      }
    }
  }
  state.k += 1;
}

}  // namespace stochopt
