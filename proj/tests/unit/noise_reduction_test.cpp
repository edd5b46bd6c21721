#include <cmath>

#include "doctest.h"
#include "stochopt/core/errors.hpp"
#include "stochopt/harness/reference.hpp"
#include "stochopt/nr/dynamic_sampling.hpp"
#include "stochopt/nr/saga.hpp"
#include "stochopt/nr/svrg.hpp"
#include "stochopt/problems/linear_loss.hpp"
#include "stochopt/problems/quadratic.hpp"
#include "stochopt/problems/synthetic.hpp"

using namespace stochopt;

namespace {

LogisticProblem five_point_logistic(double lambda = 0.1) {
  Dataset ds = parse_libsvm(
      "+1 1:0.9 2:-0.3\n"
      "-1 1:-0.4 2:0.8\n"
      "+1 1:0.2 2:0.7\n"
      "-1 1:-0.9 2:-0.5\n"
      "+1 1:0.5 2:0.1\n");
  return LogisticProblem(std::move(ds), lambda);
}

}  // namespace

TEST_CASE("prescribed batch sizes grow geometrically and cap at n") {
  auto policy = DynamicSamplingPolicy::prescribed(2.0, 1000);
  CHECK(policy.prescribed_size(1) == 1);
  CHECK(policy.prescribed_size(4) == 8);

  auto capped = DynamicSamplingPolicy::prescribed(1.05, 50);
  bool saw_cap = false;
  for (index_t k = 1; k < 200; ++k) {
    if (capped.prescribed_size(k) == 50) {
      saw_cap = true;
      CHECK(capped.prescribed_size(k + 1) == 50);
      break;
    }
  }
  CHECK(saw_cap);

  CHECK_THROWS_AS(DynamicSamplingPolicy::prescribed(1.0, 10),
                  std::invalid_argument);
}

TEST_CASE("admissible tau interval endpoint") {
  // alpha=0.1, c=mu=1: (1 - 0.05)^-1.
  CHECK(DynamicSamplingPolicy::max_admissible_tau(0.1, 1.0, 1.0) ==
        doctest::Approx(1.0 / 0.95).epsilon(1e-15));
}

TEST_CASE("adaptive sizes never fall below the prescribed backup") {
  auto policy = DynamicSamplingPolicy::adaptive(0.5, 1.5, 100000);
  for (index_t k = 1; k <= 30; ++k) {
    CHECK(policy.adaptive_size(k) >= policy.prescribed_size(k));
    if (k % 3 == 0) policy.record_test_failure();
  }
  // After failures the adaptive level leads the backup for small k.
  auto fresh = DynamicSamplingPolicy::adaptive(0.5, 1.5, 100000);
  fresh.record_test_failure();
  fresh.record_test_failure();
  CHECK(fresh.adaptive_size(1) > fresh.prescribed_size(1));
}

TEST_CASE("adaptive norm test") {
  SUBCASE("zero variance always passes") {
    Vector g = Vector::Ones(3);
    std::vector<Vector> grads(4, g);
    auto res = adaptive_norm_test(grads, g, 0.1);
    CHECK(res.phi == 0.0);
    CHECK(res.pass);
  }

  SUBCASE("hand-computed 1-d example: gradients {1,3}, g = 2") {
    std::vector<Vector> grads{Vector::Constant(1, 1.0), Vector::Constant(1, 3.0)};
    Vector g = Vector::Constant(1, 2.0);
    auto res = adaptive_norm_test(grads, g, 0.5);
    CHECK(res.phi == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(res.pass);  // chi^2 ||g||^2 = 1 >= phi
    CHECK_FALSE(adaptive_norm_test(grads, g, 0.49).pass);
  }

  SUBCASE("too-small batches are rejected") {
    std::vector<Vector> grads{Vector::Ones(2)};
    CHECK_THROWS_AS(adaptive_norm_test(grads, Vector::Ones(2), 0.5),
                    std::invalid_argument);
  }

  SUBCASE("passing the test certifies a descent direction") {
    // Construct g = grad + e with ||e|| = chi ||g|| and verify
    // grad . g >= (1 - chi) ||g||^2.
    Substream rng = RandomStream(5).at(0, Purpose::Init);
    const double chi = 0.4;
    for (int trial = 0; trial < 50; ++trial) {
      Vector grad(4), u(4);
      for (int i = 0; i < 4; ++i) grad[i] = rng.normal(), u[i] = rng.normal();
      u.normalize();
      // Fixed point of t = chi ||grad + t u||.
      double t = chi * grad.norm();
      for (int it = 0; it < 200; ++it) t = chi * (grad + t * u).norm();
      Vector g = grad + t * u;
      CHECK(std::abs((g - grad).norm() - chi * g.norm()) <= 1e-10);
      CHECK(grad.dot(g) >= (1.0 - chi) * g.squaredNorm() - 1e-12);
    }
  }
}

TEST_CASE("svrg inner direction cancels at the anchor") {
  LogisticProblem problem = five_point_logistic();
  Vector w(2);
  w << 0.4, -0.2;
  Vector anchor_grad = problem.full_gradient(w);
  for (index_t i = 0; i < 5; ++i) {
    Vector dir = svrg_inner_direction(problem, w, w, anchor_grad, i);
    CHECK((dir - anchor_grad).norm() == 0.0);
  }
}

TEST_CASE("svrg inner direction is unbiased (full enumeration)") {
  LogisticProblem problem = five_point_logistic();
  Vector anchor(2), wt(2);
  anchor << -0.2, 0.4;
  wt << 0.3, -0.7;
  Vector anchor_grad = problem.full_gradient(anchor);
  Vector mean = Vector::Zero(2);
  for (index_t i = 0; i < 5; ++i) {
    mean += svrg_inner_direction(problem, wt, anchor, anchor_grad, i);
  }
  mean /= 5.0;
  Vector expect = problem.full_gradient(wt);
  CHECK((mean - expect).norm() <= 1e-12 * std::max(1.0, expect.norm()));
}

TEST_CASE("svrg rate constant arithmetic") {
  // c=1, L=1, alpha=0.1, m=50: (1/0.8)(0.2+0.2) = 0.5.
  CHECK(svrg_rate_constant(0.1, 50, 1.0, 1.0) ==
        doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(svrg_rate_constant(0.6, 10, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("svrg outer accounting and option semantics") {
  LogisticProblem problem = five_point_logistic();
  RandomStream stream(9);
  Vector w = Vector::Ones(2);
  index_t adp = 0;
  svrg_outer(problem, w, 0.05, 7, SvrgOption::LastIterate, stream, 1, adp);
  CHECK(adp == 5 + 2 * 7);

  // Option semantics against a manual replay of the inner loop.
  for (SvrgOption option : {SvrgOption::LastIterate, SvrgOption::InnerAverage,
                            SvrgOption::RandomIterate}) {
    index_t adp2 = 0;
    Vector out = svrg_outer(problem, w, 0.05, 7, option, stream, 3, adp2);

    Vector anchor_grad = problem.full_gradient(w);
    Substream pick = stream.at(3, Purpose::InnerIndex);
    Vector wt = w;
    Vector sum = Vector::Zero(2);
    std::vector<Vector> iterates;
    for (index_t j = 0; j < 7; ++j) {
      auto i = static_cast<index_t>(pick.bounded(5));
      wt -= 0.05 * svrg_inner_direction(problem, wt, w, anchor_grad, i);
      sum += wt;
      iterates.push_back(wt);
    }
    if (option == SvrgOption::LastIterate) CHECK(out == wt);
    if (option == SvrgOption::InnerAverage) CHECK(out == Vector(sum / 7.0));
    if (option == SvrgOption::RandomIterate) {
      auto j = static_cast<index_t>(
          stream.at(3, Purpose::IterateChoice).bounded(7));
      CHECK(out == iterates[static_cast<std::size_t>(j)]);
    }
  }
}

TEST_CASE("svrg converges linearly on a small strongly convex logistic") {
  auto data = make_logistic_dataset(60, 6, 13);
  LogisticProblem problem(std::move(data), 0.05);
  ReferenceOptimum ref = reference_optimum(problem);
  double L = problem.lipschitz_bound();
  RandomStream stream(13);
  Vector w = Vector::Zero(6);
  index_t adp = 0;
  for (index_t k = 1; k <= 40; ++k) {
    w = svrg_outer(problem, w, 0.1 / L, 60, SvrgOption::InnerAverage, stream,
                   k, adp);
  }
  CHECK(problem.full_value(w) - ref.value <= 1e-10);
}

TEST_CASE("svrg refuses the noise oracle") {
  auto noisy = QuadraticEnsembleProblem::identity(2, 1.0);
  RandomStream stream(1);
  index_t adp = 0;
  CHECK_THROWS_AS(svrg_outer(noisy, Vector::Ones(2), 0.1, 5,
                             SvrgOption::InnerAverage, stream, 1, adp),
                  CapabilityError);
}

TEST_CASE("saga with a fresh table takes the exact full-gradient step") {
  LogisticProblem problem = five_point_logistic();
  Vector w0(2);
  w0 << 0.3, 0.5;
  SagaState state(w0, problem);
  saga_init_full(state, problem);
  RandomStream stream(21);
  saga_step(state, problem, 0.2, stream);
  Vector expect = w0 - 0.2 * problem.full_gradient(w0);
  CHECK((state.w - expect).norm() <= 1e-15);
}

TEST_CASE("saga direction is unbiased over the index choice") {
  LogisticProblem problem = five_point_logistic();
  // Stale table: initialized at w0, directions taken at wt.
  Vector w0(2), wt(2);
  w0 << -0.4, 0.2;
  wt << 0.6, -0.3;
  SagaState state(w0, problem);
  saga_init_full(state, problem);

  Vector mean = Vector::Zero(2);
  for (index_t j = 0; j < 5; ++j) {
    Vector loss_grad = problem.component_gradient(wt, j) - problem.l2_reg() * wt;
    Vector g = loss_grad - state.table.stored_gradient(j) +
               state.table.running_sum() / 5.0 + problem.l2_reg() * wt;
    mean += g;
  }
  mean /= 5.0;
  Vector expect = problem.full_gradient(wt);
  CHECK((mean - expect).norm() <= 1e-12 * std::max(1.0, expect.norm()));
}

TEST_CASE("saga stepsize rules") {
  CHECK(saga_stepsize(1.0, 100, 10.0) == doctest::Approx(1.0 / 220.0));
  CHECK(saga_stepsize_unknown_c(10.0) == doctest::Approx(1.0 / 30.0));
}

TEST_CASE("sag with n = 1 is deterministic gradient descent") {
  Matrix q(1, 1);
  q << 2.0;
  Vector m(1);
  m << 1.0;
  auto problem = QuadraticEnsembleProblem::single(q, m);
  SagaState state(Vector::Zero(1), problem);
  saga_init_full(state, problem);
  RandomStream stream(3);
  Vector w = Vector::Zero(1);
  for (int k = 0; k < 10; ++k) {
    sag_step(state, problem, 0.1, stream);
    w -= 0.1 * problem.full_gradient(w);
    CHECK(state.w[0] == doctest::Approx(w[0]).epsilon(1e-15));
  }
}

TEST_CASE("sag direction is biased under a stale table") {
  LogisticProblem problem = five_point_logistic();
  Vector w0(2), wt(2);
  w0 << -0.4, 0.2;
  wt << 0.9, -0.6;
  SagaState state(w0, problem);
  saga_init_full(state, problem);

  Vector mean = Vector::Zero(2);
  for (index_t j = 0; j < 5; ++j) {
    Vector loss_grad = problem.component_gradient(wt, j) - problem.l2_reg() * wt;
    Vector g = (loss_grad - state.table.stored_gradient(j) +
                state.table.running_sum()) /
                   5.0 +
               problem.l2_reg() * wt;
    mean += g;
  }
  mean /= 5.0;
  CHECK((mean - problem.full_gradient(wt)).norm() > 1e-3);

  // All-fresh table: the direction telescopes to the full gradient.
  SagaState fresh(wt, problem);
  saga_init_full(fresh, problem);
  RandomStream stream(7);
  Vector before = fresh.w;
  sag_step(fresh, problem, 0.2, stream);
  Vector expect = before - 0.2 * problem.full_gradient(before);
  CHECK((fresh.w - expect).norm() <= 1e-15);
}

TEST_CASE("gradient table keeps its running sum consistent") {
  SUBCASE("scalar storage for the linear-prediction loss") {
    LogisticProblem problem = five_point_logistic();
    GradientTable table(problem);
    CHECK(table.scalar_mode());
    Substream rng = RandomStream(31).at(0, Purpose::Init);
    Vector w(2);
    for (int step = 0; step < 100; ++step) {
      w << rng.normal(), rng.normal();
      table.update_entry(w, static_cast<index_t>(rng.bounded(5)));
      CHECK(table.sum_consistency_error() <= 1e-10);
    }
  }

  SUBCASE("dense storage otherwise") {
    auto problem = QuadraticEnsembleProblem::evenly_spaced_1d(4);
    GradientTable table(problem);
    CHECK_FALSE(table.scalar_mode());
    Substream rng = RandomStream(33).at(0, Purpose::Init);
    Vector w(1);
    for (int step = 0; step < 50; ++step) {
      w << rng.normal();
      table.update_entry(w, static_cast<index_t>(rng.bounded(4)));
      CHECK(table.sum_consistency_error() <= 1e-10);
    }
  }
}

TEST_CASE("saga assimilate mode converges without the full init") {
  auto data = make_logistic_dataset(40, 4, 19);
  LogisticProblem problem(std::move(data), 0.1);
  ReferenceOptimum ref = reference_optimum(problem);
  SagaState state(Vector::Zero(4), problem);
  RandomStream stream(19);
  double alpha = saga_stepsize_unknown_c(problem.lipschitz_bound());
  for (index_t k = 0; k < 40 * 200; ++k) saga_step(state, problem, alpha, stream);
  CHECK(problem.full_value(state.w) - ref.value <= 1e-9);
  CHECK(state.table.initialized_count() == 40);
}
