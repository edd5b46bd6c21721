#include <Eigen/Dense>
#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "stochopt/core/errors.hpp"
#include "stochopt/problems/linear_loss.hpp"
#include "stochopt/problems/quadratic.hpp"
#include "stochopt/problems/quartic2d.hpp"
#include "stochopt/problems/synthetic.hpp"
#include "stochopt/so/cg.hpp"
#include "stochopt/so/diagonal.hpp"
#include "stochopt/so/fisher.hpp"
#include "stochopt/so/lbfgs.hpp"
#include "stochopt/so/newton_cg.hpp"
#include "stochopt/sg/sg.hpp"
#include "stochopt/so/sqn.hpp"

using namespace stochopt;

namespace {

Vector randn(Substream& rng, int d) {
  Vector v(d);
  for (int i = 0; i < d; ++i) v[i] = rng.normal();
  return v;
}

}  // namespace

TEST_CASE("cg solves the identity system in one iteration") {
  Vector g(3);
  g << 1.0, -2.0, 0.5;
  CGResult res = cg_solve([](const Vector& v) { return v; }, g, 0.5, 10);
  CHECK(res.status == CGStatus::Converged);
  CHECK(res.iterations == 1);
  CHECK((res.direction + g).norm() <= 1e-15);
  CHECK(res.residual_norm <= 1e-15);
}

TEST_CASE("cg matches a dense direct solve on SPD systems") {
  Substream rng = RandomStream(3).at(0, Purpose::Init);
  for (int trial = 0; trial < 5; ++trial) {
    auto quad = make_spd_quadratic(20, 0.4, 6.0, 100 + trial);
    const Matrix& Q = quad.average_matrix();
    Vector g = randn(rng, 20);
    CGResult res =
        cg_solve([&](const Vector& v) { return (Q * v).eval(); }, g, 1e-14, 20);
    Vector dense = Q.ldlt().solve(-g);
    CHECK(res.iterations <= 20);
    CHECK((res.direction - dense).norm() <= 1e-8 * dense.norm());
  }
}

TEST_CASE("cg detects negative curvature") {
  Matrix H(2, 2);
  H << 1.0, 0.0, 0.0, -1.0;
  Vector g(2);
  g << 0.0, 1.0;
  CGResult res =
      cg_solve([&](const Vector& v) { return (H * v).eval(); }, g, 0.1, 10);
  CHECK(res.status == CGStatus::NegativeCurvature);
  CHECK((res.direction + g).norm() == 0.0);  // falls back to -g
}

TEST_CASE("one cg iteration yields a positive multiple of -g") {
  auto quad = make_spd_quadratic(6, 0.5, 4.0, 7);
  const Matrix& Q = quad.average_matrix();
  Substream rng = RandomStream(9).at(0, Purpose::Init);
  Vector g = randn(rng, 6);
  CGResult res =
      cg_solve([&](const Vector& v) { return (Q * v).eval(); }, g, 1e-14, 1);
  double scale = -res.direction[0] / g[0];
  CHECK(scale > 0.0);
  CHECK((res.direction + scale * g).norm() <= 1e-12 * g.norm());
}

TEST_CASE("cg validates its arguments") {
  Vector g = Vector::Ones(2);
  auto id = [](const Vector& v) { return v; };
  CHECK_THROWS_AS(cg_solve(id, g, 0.0, 5), std::invalid_argument);
  CHECK_THROWS_AS(cg_solve(id, g, 0.5, 0), std::invalid_argument);
}

TEST_CASE("newton-cg reaches the quadratic minimizer in one step") {
  auto quad = make_spd_quadratic(8, 0.5, 5.0, 17);
  NewtonCGState state;
  state.w = Vector::Ones(8);
  NewtonCGOptions options;
  options.cg_tolerance = 1e-14;
  options.max_cg = 16;
  Batch full;
  full.indices.assign(quad.all_indices().begin(), quad.all_indices().end());
  NewtonCGStepInfo info = newton_cg_step(state, quad, full, options);
  CHECK(info.step_size == 1.0);  // Armijo accepts the unit Newton step
  CHECK((state.w - *quad.known_minimizer()).norm() <= 1e-8);
}

TEST_CASE("newton-cg on a deterministic logistic converges fast") {
  auto data = make_logistic_dataset(200, 20, 23, 2.0);
  LogisticProblem problem(std::move(data), 1e-3);
  NewtonCGState state;
  state.w = Vector::Zero(20);
  NewtonCGOptions options;
  options.cg_tolerance = 1e-2;
  options.max_cg = 40;
  index_t iters = newton_cg_solve(state, problem, options, 1e-8, 30);
  CHECK(iters <= 30);
  CHECK(problem.full_gradient(state.w).norm() <= 1e-8);
}

TEST_CASE("newton-cg line search exhaustion raises StepFailureError") {
  // A near-zero curvature operator produces an enormous trial step that
  // backtracking cannot shrink within its budget.
  auto quad = make_spd_quadratic(4, 0.5, 2.0, 29);
  NewtonCGState state;
  state.w = Vector::Ones(4);
  NewtonCGOptions options;
  options.curvature = CurvatureKind::GaussNewton;  // unsupported => throws
  Batch full;
  full.indices.assign(quad.all_indices().begin(), quad.all_indices().end());
  CHECK_THROWS_AS(newton_cg_step(state, quad, full, options), CapabilityError);

  CGResult res = cg_solve([](const Vector& v) { return (1e-20 * v).eval(); },
                          Vector::Ones(4), 0.5, 3);
  CHECK(res.direction.norm() > 1e18);
}

TEST_CASE("empty store leaves the gradient unchanged") {
  CurvaturePairStore store(5);
  Vector g(3);
  g << 1.0, 2.0, 3.0;
  CHECK(two_loop_direction(store, g) == g);
}

TEST_CASE("single pair matches the dense BFGS update") {
  Substream rng = RandomStream(31).at(0, Purpose::Init);
  CurvaturePairStore store(5);
  Vector s = randn(rng, 3);
  Vector v = s * 2.0 + 0.1 * randn(rng, 3);
  if (s.dot(v) <= 0.0) v = 2.0 * s;
  REQUIRE(store.offer(s, v));
  Matrix H = testing::dense_bfgs_inverse(store, 3);
  Vector g = randn(rng, 3);
  Vector expect = H * g;
  Vector got = two_loop_direction(store, g);
  CHECK((got - expect).norm() <= 1e-12 * expect.norm());
}

TEST_CASE("two-loop equals the dense recursion for many stores") {
  Substream rng = RandomStream(37).at(0, Purpose::Init);
  for (int trial = 0; trial < 100; ++trial) {
    auto quad = make_spd_quadratic(8, 0.3, 4.0, 500 + trial);
    const Matrix& A = quad.average_matrix();
    CurvaturePairStore store(10);
    int m = 1 + static_cast<int>(rng.bounded(10));
    for (int j = 0; j < m; ++j) {
      Vector s = randn(rng, 8);
      store.offer(s, A * s);
    }
    Matrix H = testing::dense_bfgs_inverse(store, 8);
    Vector g = randn(rng, 8);
    Vector expect = H * g;
    Vector got = two_loop_direction(store, g);
    CHECK((got - expect).norm() <= 1e-12 * expect.norm());

    // Secant property of the most recent pair via the dense oracle.
    const CurvaturePair& last = store.pair(store.size() - 1);
    CHECK((H * last.v - last.s).norm() <= 1e-10 * last.s.norm());
  }
}

TEST_CASE("pair store safeguard and eviction") {
  CurvaturePairStore store(2);
  Vector s = Vector::Ones(2);
  Vector bad = -s;
  CHECK_FALSE(store.offer(s, bad));
  CHECK(store.size() == 0);
  CHECK(store.skipped() == 1);

  CHECK(store.offer(s, s));
  Vector s2(2);
  s2 << 1.0, 2.0;
  CHECK(store.offer(s2, 2.0 * s2));
  Vector s3(2);
  s3 << -1.0, 1.0;
  CHECK(store.offer(s3, 3.0 * s3));
  CHECK(store.size() == 2);
  CHECK(store.pair(0).s == s2);  // eldest evicted first
  for (index_t j = 0; j < store.size(); ++j) {
    CHECK(store.pair(j).s.dot(store.pair(j).v) > 0.0);
  }
}

TEST_CASE("direct L-BFGS operator inverts the two-loop operator") {
  Substream rng = RandomStream(41).at(0, Purpose::Init);
  auto quad = make_spd_quadratic(6, 0.5, 3.0, 43);
  const Matrix& A = quad.average_matrix();
  CurvaturePairStore store(4);
  for (int j = 0; j < 4; ++j) {
    Vector s = randn(rng, 6);
    store.offer(s, A * s);
  }
  LbfgsHessianOperator direct(store);
  Vector g = randn(rng, 6);
  Vector round_trip = direct.apply(two_loop_direction(store, g));
  CHECK((round_trip - g).norm() <= 1e-10 * g.norm());

  const CurvaturePair& last = store.pair(store.size() - 1);
  CHECK((direct.apply(last.s) - last.v).norm() <= 1e-10 * last.v.norm());
}

TEST_CASE("collect_pair strategies") {
  SUBCASE("hessian-action on a quadratic is exact") {
    auto quad = make_spd_quadratic(5, 0.5, 2.0, 47);
    CurvaturePairStore store(3);
    Vector w = Vector::Ones(5);
    Vector w_next = 0.5 * Vector::Ones(5);
    Batch batch;
    batch.indices = {0};
    index_t adp = 0;
    CHECK(collect_pair(store, quad, PairStrategy::HessianAction, w, w_next,
                       batch, batch.indices, adp));
    Vector s = w_next - w;
    Vector expect = quad.average_matrix() * s;
    CHECK((store.pair(0).v - expect).norm() <= 1e-14 * expect.norm());
    CHECK(store.pair(0).s.dot(store.pair(0).v) > 0.0);
  }

  SUBCASE("online pairs on a strongly convex logistic satisfy s.v >= lambda |s|^2") {
    auto data = make_logistic_dataset(30, 5, 53);
    LogisticProblem problem(std::move(data), 0.2);
    Substream rng = RandomStream(59).at(0, Purpose::Init);
    Batch batch;
    batch.indices.assign(problem.all_indices().begin(),
                         problem.all_indices().end());
    for (int trial = 0; trial < 100; ++trial) {
      CurvaturePairStore store(1);
      Vector w = randn(rng, 5);
      Vector w_next = w + 0.1 * randn(rng, 5);
      index_t adp = 0;
      REQUIRE(collect_pair(store, problem, PairStrategy::OnlineSameSeed, w,
                           w_next, batch, batch.indices, adp));
      const CurvaturePair& p = store.pair(0);
      CHECK(p.s.dot(p.v) >= 0.2 * p.s.squaredNorm() * (1.0 - 1e-10));
    }
  }

  SUBCASE("negative-curvature pairs are skipped") {
    Quartic2dProblem quartic;
    CurvaturePairStore store(2);
    Vector w(2), w_next(2);
    w << 0.0, 0.0;       // curvature -4 along the first coordinate
    w_next << 0.05, 0.0;
    Batch batch;
    batch.indices = {0};
    index_t adp = 0;
    CHECK_FALSE(collect_pair(store, quartic, PairStrategy::OnlineSameSeed, w,
                             w_next, batch, batch.indices, adp));
    CHECK(store.size() == 0);
  }
}

TEST_CASE("sqn with an empty store matches sg, then accelerates") {
  auto quad = make_spd_quadratic(10, 0.1, 10.0, 61);
  const double L = quad.lipschitz_bound();

  SUBCASE("first step equals the sg step") {
    RandomStream s1(5);
    SqnOptions options;
    options.memory = 10;
    options.batch_size = 1;
    SqnState state(Vector::Ones(10), options.memory);
    sqn_step(state, quad, StepsizeSchedule::fixed(0.05), options, s1);

    RandomStream s2(5);
    SGState sg = SGState::init(Vector::Ones(10));
    sg_step(sg, quad, StepsizeSchedule::fixed(0.05), 1, s2);
    CHECK(state.w == sg.w);
  }

  SUBCASE("cadence-1 curvature pairs beat gradient descent by 5x") {
    const double target = 1e-10;
    double fstar = *quad.known_optimal_value();

    RandomStream stream(7);
    SqnOptions options;
    options.memory = 10;
    options.batch_size = 1;
    SqnState state(Vector::Ones(10), options.memory);
    index_t qn_iters = 0;
    StepsizeSchedule unit = StepsizeSchedule::fixed(1.0);
    while (quad.full_value(state.w) - fstar > target && qn_iters < 100000) {
      sqn_step(state, quad, unit, options, stream);
      ++qn_iters;
    }

    Vector w = Vector::Ones(10);
    index_t gd_iters = 0;
    while (quad.full_value(w) - fstar > target && gd_iters < 1000000) {
      w -= (1.0 / L) * quad.full_gradient(w);
      ++gd_iters;
    }
    CHECK(qn_iters * 5 <= gd_iters);
  }

  SUBCASE("online strategy costs two gradient evaluations per iteration") {
    RandomStream stream(9);
    SqnOptions options;
    options.memory = 5;
    options.batch_size = 3;
    SqnState state(Vector::Ones(10), options.memory);
    for (int k = 0; k < 7; ++k) {
      sqn_step(state, quad, StepsizeSchedule::fixed(0.05), options, stream);
    }
    CHECK(state.adp == 7 * 2 * 3);
  }
}

TEST_CASE("diagonal curvature estimators") {
  SUBCASE("gn running average converges to the exact diagonal") {
    Matrix Q = Matrix::Zero(2, 2);
    Q(0, 0) = 2.0;
    Q(1, 1) = 8.0;
    auto problem = QuadraticEnsembleProblem::single(Q, Vector::Zero(2));
    DiagonalOptions options;
    options.variant = DiagonalVariant::GnRunningAverage;
    options.alpha = 1e-3;
    options.averaging = 0.1;
    DiagonalState state(Vector::Ones(2), options);
    RandomStream stream(11);
    for (int k = 0; k < 500; ++k) {
      diagonal_curvature_step(state, problem, options, stream);
    }
    CHECK(state.estimate[0] == doctest::Approx(2.0).epsilon(0.01));
    CHECK(state.estimate[1] == doctest::Approx(8.0).epsilon(0.01));
  }

  SUBCASE("ratio updates clamp into the projection interval") {
    Matrix Q = Matrix::Zero(2, 2);
    Q(0, 0) = 100.0;  // v/s = 100 on this coordinate
    Q(1, 1) = 1.0;
    auto problem = QuadraticEnsembleProblem::single(Q, Vector::Ones(2));
    DiagonalOptions options;
    options.variant = DiagonalVariant::RatioSum;
    options.alpha = 1e-3;
    options.proj_lo = 0.1;
    options.proj_hi = 10.0;
    DiagonalState state(Vector::Zero(2), options);
    RandomStream stream(13);
    diagonal_curvature_step(state, problem, options, stream);
    CHECK(state.estimate[0] == doctest::Approx(0.1 + 10.0).epsilon(1e-12));
    CHECK(state.estimate[1] == doctest::Approx(0.1 + 1.0).epsilon(1e-9));
  }

  SUBCASE("ratio-sum effective stepsizes never increase") {
    auto problem = make_spd_quadratic(4, 0.5, 5.0, 67, /*noise=*/0.5);
    DiagonalOptions options;
    options.variant = DiagonalVariant::RatioSum;
    options.alpha = 0.01;
    resolve_projection_interval(problem, options);
    DiagonalState state(Vector::Ones(4), options);
    RandomStream stream(17);
    Vector prev = state.estimate;
    for (int k = 0; k < 200; ++k) {
      diagonal_curvature_step(state, problem, options, stream);
      for (int i = 0; i < 4; ++i) CHECK(state.estimate[i] >= prev[i]);
      prev = state.estimate;
    }
  }
}

TEST_CASE("empirical fisher direction") {
  SUBCASE("single-sample operator is the rank-one outer product") {
    Dataset ds = parse_libsvm("+1 1:0.5 2:-1.0 3:0.25\n");
    LogisticProblem problem(std::move(ds), 0.0);
    Vector w(3);
    w << 0.2, 0.1, -0.3;
    Vector u = problem.component_gradient(w, 0);
    Substream rng = RandomStream(19).at(0, Purpose::Init);
    Vector v = randn(rng, 3);
    LinearOperator fisher = make_fisher_operator(problem, w, problem.all_indices());
    Vector expect = u * u.dot(v);
    CHECK((fisher(v) - expect).norm() <= 1e-14 * std::max(1.0, expect.norm()));
  }

  SUBCASE("fisher equals the generalized Gauss-Newton for the log loss") {
    auto data = make_logistic_dataset(25, 6, 71);
    LogisticProblem problem(std::move(data), 0.0);
    Substream rng = RandomStream(23).at(0, Purpose::Init);
    for (int trial = 0; trial < 20; ++trial) {
      Vector w = 0.5 * randn(rng, 6);
      Vector v = randn(rng, 6);
      Vector a = problem.gauss_newton_vector_product(w, problem.all_indices(),
                                                     v, GnVariant::Generalized);
      Vector b = problem.gauss_newton_vector_product(
          w, problem.all_indices(), v, GnVariant::LogLossFisher);
      CHECK((a - b).norm() <= 1e-12 * std::max(1e-30, a.norm()));
    }
  }

  SUBCASE("large regularization reduces to the scaled gradient") {
    auto data = make_logistic_dataset(25, 6, 73);
    LogisticProblem problem(std::move(data), 0.0);
    Vector w = Vector::Ones(6) * 0.3;
    Vector g = problem.full_gradient(w);
    // Estimate ||G|| coarsely via a few matvecs.
    LinearOperator fisher = make_fisher_operator(problem, w, problem.all_indices());
    double norm_est = fisher(g).norm() / std::max(1e-30, g.norm());
    double mu = 1e6 * std::max(norm_est, 1e-12);
    Vector p = empirical_fisher_direction(problem, w, problem.all_indices(), g, mu);
    Vector expect = g / mu;
    CHECK((p - expect).norm() <= 0.01 * expect.norm());
  }

  SUBCASE("unsupported problems raise capability errors") {
    auto quad = QuadraticEnsembleProblem::identity(3);
    Vector g = Vector::Ones(3);
    CHECK_THROWS_AS(empirical_fisher_direction(quad, Vector::Zero(3),
                                               quad.all_indices(), g, 1e-8),
                    CapabilityError);
  }
}

TEST_CASE("newton-cg per-iteration access-cost model") {
  auto data = make_logistic_dataset(100, 8, 79);
  LogisticProblem problem(std::move(data), 0.01);
  NewtonCGState state;
  state.w = Vector::Zero(8);
  NewtonCGOptions options;
  options.cg_tolerance = 0.1;
  options.max_cg = 10;
  options.hessian_batch_ratio = 0.25;
  RandomStream stream(83);
  for (index_t k = 1; k <= 5; ++k) {
    Batch batch = sample_batch(stream, k, 40, SamplingMode::WithoutReplacement, 100);
    index_t before = state.adp;
    newton_cg_step(state, problem, batch, options);
    index_t cost = state.adp - before;
    CHECK(cost <= 40 + options.max_cg * 10);  // |S_k| + max_cg |S_k^H|
  }
}
