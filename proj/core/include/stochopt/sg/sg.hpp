#pragma once

#include "stochopt/core/batch.hpp"
#include "stochopt/core/errors.hpp"
#include "stochopt/core/rng.hpp"
#include "stochopt/core/schedule.hpp"
#include "stochopt/problems/problem.hpp"

namespace stochopt {

// State shared by the SG-family solvers.  k indexes the current iterate
// (w == w_k, starting at 1); adp counts component-gradient evaluations.
// displacement holds w_k - w_{k-1} with w_0 := w_1, so momentum starts
// from a zero buffer.  accumulator carries the per-coordinate AdaGrad /
// RMSprop statistics.  average tracks the running mean of w_1..w_k.
struct SGState {
  Vector w;
  index_t k = 1;
  index_t adp = 0;
  Vector displacement;
  Vector accumulator;
  Vector average;
  index_t average_count = 0;

  static SGState init(Vector w0);
};

// Batch-average gradient, plus additive isotropic noise when the problem's
// noise oracle is active.  A batch of size b carries noise variance M/b
// (the b-sample average in distribution). adp accounting is the caller's
// job; the draw is deterministic in (stream, k).
Vector stochastic_gradient(const Problem& problem, const Vector& w,
                           const Batch& batch, const RandomStream& stream,
                           index_t k);

// Draws the iteration-k batch, all solvers use the same convention.
Batch draw_batch(const Problem& problem, const RandomStream& stream, index_t k,
                 index_t batch_size, SamplingMode mode);

// w <- w - alpha_k g(w_k, xi_k).  Throws DivergedError (carrying the last
// finite iterate) if the update leaves the representable region.
void sg_step(SGState& state, const Problem& problem,
             const StepsizeSchedule& schedule, index_t batch_size,
             const RandomStream& stream,
             SamplingMode mode = SamplingMode::WithReplacement);

// Heavy-ball: w_{k+1} = w_k - alpha g + beta (w_k - w_{k-1}).
void momentum_step(SGState& state, const Problem& problem, double alpha,
                   double beta, index_t batch_size, const RandomStream& stream,
                   SamplingMode mode = SamplingMode::WithReplacement);

// Nesterov: gradient evaluated at the extrapolated point
// w~ = w_k + beta (w_k - w_{k-1}).  beta < 0 requests the standard
// (k-1)/(k+2) schedule.
void nesterov_step(SGState& state, const Problem& problem, double alpha,
                   double beta, index_t batch_size, const RandomStream& stream,
                   SamplingMode mode = SamplingMode::WithReplacement);
inline constexpr double kNesterovScheduleBeta = -1.0;

// Per coordinate: R_i += g_i^2; w_i -= alpha / sqrt(R_i + mu_reg) * g_i.
void adagrad_step(SGState& state, const Problem& problem, double alpha,
                  double mu_reg, index_t batch_size, const RandomStream& stream,
                  SamplingMode mode = SamplingMode::WithReplacement);

// Per coordinate: R_i <- (1-decay) R_i + decay g_i^2, then the AdaGrad-style
// scaled update.
void rmsprop_step(SGState& state, const Problem& problem, double alpha,
                  double decay, double mu_reg, index_t batch_size,
                  const RandomStream& stream,
                  SamplingMode mode = SamplingMode::WithReplacement);

// Polyak-Ruppert running mean of the iterate sequence; has no effect on
// the iterates themselves.
void update_average(SGState& state);

inline constexpr double kDefaultMuReg = 1e-8;

// Shared guard: validates the new iterate, throws DivergedError carrying
// the pre-step iterate when it left the representable region.
void check_finite_step(const Vector& before, const Vector& after, index_t k);

}  // namespace stochopt
