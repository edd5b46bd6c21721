#include "stochopt/sg/sg.hpp"

#include <cmath>

namespace stochopt {

SGState SGState::init(Vector w0) {
  SGState s;
  s.displacement = Vector::Zero(w0.size());
  s.accumulator = Vector::Zero(w0.size());
  s.average = w0;
  s.average_count = 1;
  s.w = std::move(w0);
  return s;
}

Vector stochastic_gradient(const Problem& problem, const Vector& w,
                           const Batch& batch, const RandomStream& stream,
                           index_t k) {
  Vector g = problem.batch_gradient(w, batch.indices);
  double M = problem.noise_magnitude();
  if (M > 0.0) {
    Substream rng = stream.at(k, Purpose::GradientNoise);
    double sd = std::sqrt(M / (static_cast<double>(g.size()) *
                               static_cast<double>(batch.size())));
    for (int j = 0; j < g.size(); ++j) g[j] += sd * rng.normal();
  }
  return g;
}

Batch draw_batch(const Problem& problem, const RandomStream& stream, index_t k,
                 index_t batch_size, SamplingMode mode) {
  return sample_batch(stream, k, batch_size, mode, problem.num_components());
}

void check_finite_step(const Vector& before, const Vector& after, index_t k) {
  for (int j = 0; j < after.size(); ++j) {
    if (!std::isfinite(after[j]) || std::abs(after[j]) > kDivergenceCoordLimit) {
      throw DivergedError("iterate left the representable region", before, k);
    }
  }
}

namespace {

void finish_step(SGState& state, const Vector& before) {
  check_finite_step(before, state.w, state.k);
  state.k += 1;
}

}  // namespace

void sg_step(SGState& state, const Problem& problem,
             const StepsizeSchedule& schedule, index_t batch_size,
             const RandomStream& stream, SamplingMode mode) {
  Batch batch = draw_batch(problem, stream, state.k, batch_size, mode);
  Vector g = stochastic_gradient(problem, state.w, batch, stream, state.k);
  state.adp += batch.size();
  double alpha = schedule.at(state.k);

  Vector before = state.w;
  state.w -= alpha * g;
  state.displacement = state.w - before;
  finish_step(state, before);
}

void momentum_step(SGState& state, const Problem& problem, double alpha,
                   double beta, index_t batch_size, const RandomStream& stream,
                   SamplingMode mode) {
  Batch batch = draw_batch(problem, stream, state.k, batch_size, mode);
  Vector g = stochastic_gradient(problem, state.w, batch, stream, state.k);
  state.adp += batch.size();

  Vector before = state.w;
  state.w += -alpha * g + beta * state.displacement;
  state.displacement = state.w - before;
  finish_step(state, before);
}

void nesterov_step(SGState& state, const Problem& problem, double alpha,
                   double beta, index_t batch_size, const RandomStream& stream,
                   SamplingMode mode) {
  if (beta == kNesterovScheduleBeta) {
    beta = static_cast<double>(state.k - 1) / static_cast<double>(state.k + 2);
  }
  Batch batch = draw_batch(problem, stream, state.k, batch_size, mode);
  Vector extrapolated = state.w + beta * state.displacement;
  Vector g =
      stochastic_gradient(problem, extrapolated, batch, stream, state.k);
  state.adp += batch.size();

  Vector before = state.w;
  state.w = extrapolated - alpha * g;
  state.displacement = state.w - before;
  finish_step(state, before);
}

void adagrad_step(SGState& state, const Problem& problem, double alpha,
                  double mu_reg, index_t batch_size, const RandomStream& stream,
                  SamplingMode mode) {
  Batch batch = draw_batch(problem, stream, state.k, batch_size, mode);
  Vector g = stochastic_gradient(problem, state.w, batch, stream, state.k);
  state.adp += batch.size();

  Vector before = state.w;
  for (int j = 0; j < g.size(); ++j) {
    state.accumulator[j] += g[j] * g[j];
    double denom = std::sqrt(state.accumulator[j] + mu_reg);
    if (denom > 0.0) state.w[j] -= alpha / denom * g[j];
  }
  state.displacement = state.w - before;
  finish_step(state, before);
}

void rmsprop_step(SGState& state, const Problem& problem, double alpha,
                  double decay, double mu_reg, index_t batch_size,
                  const RandomStream& stream, SamplingMode mode) {
  Batch batch = draw_batch(problem, stream, state.k, batch_size, mode);
  Vector g = stochastic_gradient(problem, state.w, batch, stream, state.k);
  state.adp += batch.size();

  Vector before = state.w;
  for (int j = 0; j < g.size(); ++j) {
    state.accumulator[j] =
        (1.0 - decay) * state.accumulator[j] + decay * g[j] * g[j];
    double denom = std::sqrt(state.accumulator[j] + mu_reg);
    if (denom > 0.0) state.w[j] -= alpha / denom * g[j];
  }
  state.displacement = state.w - before;
  finish_step(state, before);
}

void update_average(SGState& state) {
  // Incremental mean over w_1..w_k; called after each step so that
  // average_count tracks the iterate index.
  state.average_count += 1;
  double c = static_cast<double>(state.average_count);
  state.average += (state.w - state.average) / c;
}

}  // namespace stochopt
