#include "stochopt/nr/saga.hpp"

#include <stdexcept>

#include "stochopt/core/errors.hpp"
#include "stochopt/sg/sg.hpp"

namespace stochopt {

namespace {

void require_finite_sum(const Problem& problem) {
  if (problem.noise_magnitude() > 0.0) {
    throw CapabilityError(
        "gradient aggregation is a finite-sum method; disable the noise oracle");
  }
}

// Loss-part gradient of component j at w.  For linear losses the l2 term
// is excluded here and added once to the aggregated direction.
Vector loss_gradient(const Problem& problem, const LinearLossProblem* linear,
                     const Vector& w, index_t j) {
  if (linear) {
    Vector g = Vector::Zero(w.size());
    linear->row(j).add_to(g, linear->loss_derivative(linear->margin(w, j), j));
    return g;
  }
  return problem.component_gradient(w, j);
}

void apply_step(SagaState& state, const Vector& g, double alpha) {
  Vector before = state.w;
  state.w -= alpha * g;
  check_finite_step(before, state.w, state.k);
  state.k += 1;
}

}  // namespace

SagaState::SagaState(Vector w0, const Problem& problem)
    : w(std::move(w0)), table(problem) {}

void saga_init_full(SagaState& state, const Problem& problem) {
  require_finite_sum(problem);
  const index_t n = problem.num_components();
  for (index_t i = 0; i < n; ++i) state.table.update_entry(state.w, i);
  state.adp += n;
}

void saga_step(SagaState& state, const Problem& problem, double alpha,
               const RandomStream& stream) {
  require_finite_sum(problem);
  const auto* linear = problem.as_linear_loss();
  const index_t n = problem.num_components();
  auto j = static_cast<index_t>(stream.at(state.k, Purpose::InnerIndex)
                                    .bounded(static_cast<std::uint64_t>(n)));

  Vector g = loss_gradient(problem, linear, state.w, j);
  state.adp += 1;
  index_t m = state.table.initialized_count();
  if (m > 0) {
    if (state.table.is_initialized(j)) g -= state.table.stored_gradient(j);
    g += state.table.running_sum() / static_cast<double>(m);
  }
  if (linear && linear->l2_reg() > 0.0) g += linear->l2_reg() * state.w;

  state.table.update_entry(state.w, j);
  apply_step(state, g, alpha);
}

void sag_step(SagaState& state, const Problem& problem, double alpha,
              const RandomStream& stream) {
  require_finite_sum(problem);
  const auto* linear = problem.as_linear_loss();
  const index_t n = problem.num_components();
  auto j = static_cast<index_t>(stream.at(state.k, Purpose::InnerIndex)
                                    .bounded(static_cast<std::uint64_t>(n)));

  Vector g = loss_gradient(problem, linear, state.w, j);
  state.adp += 1;
  g -= state.table.stored_gradient(j);
  g += state.table.running_sum();
  g /= static_cast<double>(n);
  if (linear && linear->l2_reg() > 0.0) g += linear->l2_reg() * state.w;

  state.table.update_entry(state.w, j);
  apply_step(state, g, alpha);
}

double saga_stepsize(double c, index_t n, double L) {
  return 1.0 / (2.0 * (c * static_cast<double>(n) + L));
}

double saga_stepsize_unknown_c(double L) { return 1.0 / (3.0 * L); }

}  // namespace stochopt
