#include "stochopt/so/sqn.hpp"

#include "stochopt/sg/sg.hpp"

namespace stochopt {

SqnState::SqnState(Vector w0, index_t memory) : w(std::move(w0)), store(memory) {}

bool collect_pair(CurvaturePairStore& store, const Problem& problem,
                  PairStrategy strategy, const Vector& w, const Vector& w_next,
                  const Batch& batch, std::span<const index_t> hessian_batch,
                  index_t& adp, const Vector* batch_grad_at_w) {
  Vector s = w_next - w;
  Vector v;
  switch (strategy) {
    case PairStrategy::OnlineSameSeed: {
      // Same batch (and seed) on both sides; an additive noise draw
      // shared by the two evaluations cancels in the difference, so the
      // clean batch gradients are differenced directly.
      v = problem.batch_gradient(w_next, batch.indices);
      adp += batch.size();
      if (batch_grad_at_w) {
        v -= *batch_grad_at_w;
      } else {
        v -= problem.batch_gradient(w, batch.indices);
        adp += batch.size();
      }
      break;
    }
    case PairStrategy::HessianAction: {
      v = problem.hessian_vector_product(w, hessian_batch, s);
      adp += static_cast<index_t>(hessian_batch.size());
      break;
    }
  }
  return store.offer(std::move(s), std::move(v));
}

void sqn_step(SqnState& state, const Problem& problem,
              const StepsizeSchedule& schedule, const SqnOptions& options,
              const RandomStream& stream) {
  Batch batch =
      draw_batch(problem, stream, state.k, options.batch_size, options.mode);
  Vector g_clean = problem.batch_gradient(state.w, batch.indices);
  state.adp += batch.size();
  Vector g = g_clean;
  double M = problem.noise_magnitude();
  if (M > 0.0) {
    Substream rng = stream.at(state.k, Purpose::GradientNoise);
    double sd = std::sqrt(M / (static_cast<double>(g.size()) *
                               static_cast<double>(batch.size())));
    for (int j = 0; j < g.size(); ++j) g[j] += sd * rng.normal();
  }

  Vector direction = two_loop_direction(state.store, g);
  double alpha = schedule.at(state.k);

  Vector before = state.w;
  state.w -= alpha * direction;
  check_finite_step(before, state.w, state.k);

  if (state.k % options.pair_cadence == 0) {
    Batch hbatch;
    std::span<const index_t> h_ids(batch.indices);
    if (options.strategy == PairStrategy::HessianAction &&
        options.hessian_batch_size > 0) {
      hbatch.k = state.k;
      Substream rng = stream.at(state.k, Purpose::HessianBatch);
      auto n = static_cast<std::uint64_t>(problem.num_components());
      for (index_t i = 0; i < options.hessian_batch_size; ++i) {
        hbatch.indices.push_back(static_cast<index_t>(rng.bounded(n)));
      }
      h_ids = hbatch.indices;
    }
    collect_pair(state.store, problem, options.strategy, before, state.w,
                 batch, h_ids, state.adp, &g_clean);
  }
  state.k += 1;
}

}  // namespace stochopt
