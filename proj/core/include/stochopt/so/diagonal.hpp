#pragma once

#include "stochopt/core/batch.hpp"
#include "stochopt/core/rng.hpp"
#include "stochopt/problems/problem.hpp"

namespace stochopt {

// Per-coordinate curvature estimators driving a scaled SG update
// w_i <- w_i - alpha / (G_i + mu_reg) * g_i.
enum class DiagonalVariant {
  GnRunningAverage,  // G <- (1-lambda) G + lambda diag(curvature matrix)
  RatioAverage,      // G <- (1-lambda) G + lambda Proj(v_i / s_i)
  RatioSum,          // G <- G + Proj(v_i / s_i); effective stepsizes decrease
};

struct DiagonalOptions {
  DiagonalVariant variant = DiagonalVariant::GnRunningAverage;
  double alpha = 0.01;
  double averaging = 0.1;  // lambda for the running averages
  double mu_reg = 1e-8;
  double proj_lo = 0.0;  // ratio clamp interval; <=0 selects the default
  double proj_hi = 0.0;  //   [1e-3 Lhat, 1e3 Lhat]
  index_t batch_size = 1;
  SamplingMode mode = SamplingMode::WithReplacement;
};

struct DiagonalState {
  Vector w;
  index_t k = 1;
  index_t adp = 0;
  Vector estimate;  // per-coordinate curvature estimate G

  DiagonalState(Vector w0, const DiagonalOptions& options);
};

// One scaled step.  The gn variant refreshes the estimate from the batch
// curvature diagonal before stepping; the ratio variants step first, then
// update from the displacement pair (v_i/s_i clamped into the projection
// interval; coordinates with s_i = 0 are skipped).
void diagonal_curvature_step(DiagonalState& state, const Problem& problem,
                             const DiagonalOptions& options,
                             const RandomStream& stream);

// Default projection interval derived from the problem's Lipschitz bound.
void resolve_projection_interval(const Problem& problem, DiagonalOptions& options);

}  // namespace stochopt
