#pragma once

#include <optional>

#include "stochopt/core/batch.hpp"
#include "stochopt/core/rng.hpp"
#include "stochopt/core/schedule.hpp"
#include "stochopt/problems/problem.hpp"
#include "stochopt/so/lbfgs.hpp"

namespace stochopt {

// How the gradient displacement v is formed when a pair is collected.
enum class PairStrategy {
  OnlineSameSeed,  // v = grad_{S_k}(w_{k+1}) - grad_{S_k}(w_k), same batch
  HessianAction,   // v = subsampled Hessian at w_k applied to s
};

struct SqnOptions {
  index_t memory = 10;
  index_t batch_size = 1;
  index_t pair_cadence = 1;  // collect a pair every this many iterations
  PairStrategy strategy = PairStrategy::OnlineSameSeed;
  // Hessian-action subsample size; 0 means reuse the step batch.
  index_t hessian_batch_size = 0;
  SamplingMode mode = SamplingMode::WithReplacement;
};

struct SqnState {
  Vector w;
  index_t k = 1;
  index_t adp = 0;
  CurvaturePairStore store;

  SqnState(Vector w0, index_t memory);
};

// Forms the displacement pair for the step w -> w_next taken on `batch`
// and offers it to the store; returns false when the safeguard skipped
// it.  adp accounting for the extra gradient/Hessian work is added to
// `adp`.  Passing the already-computed clean batch gradient at w avoids
// re-evaluating it (one extra evaluation per pair, matching the online
// L-BFGS cost of two gradient evaluations per iteration).
bool collect_pair(CurvaturePairStore& store, const Problem& problem,
                  PairStrategy strategy, const Vector& w, const Vector& w_next,
                  const Batch& batch, std::span<const index_t> hessian_batch,
                  index_t& adp, const Vector* batch_grad_at_w = nullptr);

// One iteration of the stochastic quasi-Newton framework:
// w <- w - alpha_k H_k g(w_k, xi_k) with H_k the two-loop operator over
// the stored pairs.  Cadence 1 with the online strategy is online L-BFGS
// (two gradient evaluations per iteration); cadence 10-20 with
// Hessian-action pairs is SQN.
void sqn_step(SqnState& state, const Problem& problem,
              const StepsizeSchedule& schedule, const SqnOptions& options,
              const RandomStream& stream);

}  // namespace stochopt
