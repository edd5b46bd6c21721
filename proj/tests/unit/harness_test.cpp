#include <cmath>
#include <sstream>

#include "doctest.h"
#include "stochopt/harness/budget.hpp"
#include "stochopt/harness/checks.hpp"
#include "stochopt/harness/driver.hpp"
#include "stochopt/harness/rate.hpp"
#include "stochopt/harness/reference.hpp"
#include "stochopt/problems/synthetic.hpp"

using namespace stochopt;

TEST_CASE("rate estimation on synthetic traces") {
  SUBCASE("exact geometric input") {
    std::vector<double> gaps;
    for (int k = 1; k <= 100; ++k) gaps.push_back(std::pow(0.5, k));
    RateEstimate est = estimate_rate(gaps, 100, RateKind::Linear);
    CHECK(std::abs(est.contraction - 0.5) <= 1e-6);
  }

  SUBCASE("exact harmonic input") {
    std::vector<double> gaps;
    for (int k = 1; k <= 200; ++k) gaps.push_back(3.0 / k);
    RateEstimate est = estimate_rate(gaps, 200, RateKind::Sublinear);
    CHECK(est.constant == doctest::Approx(3.0).epsilon(0.01));
    CHECK(est.exponent == doctest::Approx(1.0).epsilon(0.01));
  }

  SUBCASE("steepest descent on a quadratic meets the known contraction") {
    // Exact line search: the classical per-iteration gap bound is
    // ((kappa-1)/(kappa+1))^2.
    const double kappa = 10.0;
    auto problem = make_spd_quadratic(8, 1.0, kappa, 5);
    double fstar = *problem.known_optimal_value();
    const Matrix& Q = problem.average_matrix();
    Vector w = Vector::Ones(8);
    std::vector<double> gaps;
    for (int k = 0; k < 200; ++k) {
      gaps.push_back(problem.full_value(w) - fstar);
      Vector g = problem.full_gradient(w);
      w -= (g.squaredNorm() / g.dot(Q * g)) * g;
    }
    RateEstimate est = estimate_rate(gaps, 100, RateKind::Linear);
    double bound = ((kappa - 1.0) / (kappa + 1.0)) * ((kappa - 1.0) / (kappa + 1.0));
    CHECK(est.contraction <= bound + 0.01);
  }

  SUBCASE("nonpositive gaps truncate; short traces are rejected") {
    std::vector<double> gaps(30, 1.0);
    for (int k = 0; k < 30; ++k) gaps[static_cast<std::size_t>(k)] = std::pow(0.9, k);
    gaps[20] = 0.0;
    RateEstimate est = estimate_rate(gaps, 30, RateKind::Linear);
    CHECK(est.window_end == 20);
    std::vector<double> tiny(5, 1.0);
    CHECK_THROWS_AS(estimate_rate(tiny, 5, RateKind::Linear), std::invalid_argument);
  }
}

TEST_CASE("reference optimum uses closed forms and Newton fallback") {
  auto quad = make_spd_quadratic(6, 0.5, 3.0, 7);
  ReferenceOptimum qref = reference_optimum(quad);
  CHECK(qref.value == *quad.known_optimal_value());

  auto data = make_logistic_dataset(80, 6, 9);
  LogisticProblem logistic(std::move(data), 0.05);
  ReferenceOptimum lref = reference_optimum(logistic);
  CHECK(lref.gradient_norm <= 1e-12);
}

TEST_CASE("theorem checks rerun to identical verdicts") {
  SgFixedConfig config;
  config.dim = 4;
  config.seeds = 5;
  config.horizon = 800;
  TheoremCheck a = check_fixed_stepsize_gap(config);
  TheoremCheck b = check_fixed_stepsize_gap(config);
  CHECK(a.pass == b.pass);
  REQUIRE(a.empirical.size() == b.empirical.size());
  for (std::size_t i = 0; i < a.empirical.size(); ++i) {
    CHECK(a.empirical[i] == b.empirical[i]);  // bitwise
  }
  CHECK(a.summary() == b.summary());
}

TEST_CASE("driver produces complete reproducible traces") {
  auto problem = std::make_shared<QuadraticEnsembleProblem>(
      QuadraticEnsembleProblem::identity(3, 0.5));
  RunSpec spec;
  spec.problem = problem;
  spec.solver = SgSpec{StepsizeSchedule::fixed(0.5), 1, false};
  spec.seed = 1;
  spec.max_iterations = 100;
  spec.run_id = "unit";
  spec.config_digest = config_digest("unit");

  RunResult a = run_solver(spec);
  CHECK(a.status == "ok");
  CHECK(a.trace.records().size() == 100);
  CHECK(a.final_adp == 100);

  RunResult b = run_solver(spec);
  std::ostringstream ca, cb;
  a.trace.write_csv(ca);
  b.trace.write_csv(cb);
  CHECK(ca.str() == cb.str());

  // adp never decreases along the trace.
  index_t prev = 0;
  for (const TraceRecord& r : a.trace.records()) {
    CHECK(r.adp >= prev);
    prev = r.adp;
  }
}

TEST_CASE("driver reports divergence with a nonfatal status") {
  auto problem = std::make_shared<QuadraticEnsembleProblem>(
      QuadraticEnsembleProblem::identity(2));
  RunSpec spec;
  spec.problem = problem;
  spec.solver = SgSpec{StepsizeSchedule::fixed(5.0), 1, false};
  spec.w0 = Vector::Ones(2);
  spec.max_iterations = 5000;
  RunResult res = run_solver(spec);
  CHECK(res.status == "diverged");
  CHECK(std::isfinite(res.final_value));
}

TEST_CASE("driver runs every solver family end to end") {
  auto logistic = std::make_shared<LogisticProblem>(
      make_logistic_dataset(40, 5, 11), 0.1);
  auto base = make_spd_quadratic(5, 0.5, 3.0, 13);
  Vector shift(5);
  shift << 1.0, -0.6, 0.3, -1.2, 0.8;
  auto quad = std::make_shared<QuadraticEnsembleProblem>(
      QuadraticEnsembleProblem::single(base.average_matrix(), shift));
  auto ridge = std::make_shared<LeastSquaresProblem>(
      make_regression_dataset(30, 5, 15), 0.2);

  auto run = [](std::shared_ptr<const Problem> p, SolverSpec solver,
                double lambda1 = 0.0) {
    RunSpec spec;
    spec.problem = std::move(p);
    spec.solver = std::move(solver);
    spec.lambda1 = lambda1;
    spec.max_iterations = 60;
    RunResult res = run_solver(spec);
    CHECK((res.status == "ok" || res.status == "converged"));
    CHECK(!res.trace.empty());
    return res;
  };

  run(logistic, SgSpec{StepsizeSchedule::diminishing(2.0, 10.0), 2, true});
  run(logistic, MomentumSpec{0.5, 0.5, 2});
  run(logistic, NesterovSpec{0.5, kNesterovScheduleBeta, 2});
  run(logistic, AdagradSpec{0.5, 1e-8, 2});
  run(logistic, RmspropSpec{0.05, 0.1, 1e-8, 2});
  run(logistic, DynamicSgSpec{0.5, 1.05, false, 0.5});
  run(logistic, DynamicSgSpec{0.5, 1.05, true, 0.5});
  run(logistic, SvrgSpec{0.5, 40, SvrgOption::InnerAverage});
  run(logistic, SagaSpec{0.0, false, SagaInit::FullAtStart});
  run(logistic, SagaSpec{0.0, true, SagaInit::FullAtStart});
  run(logistic, GdSpec{0.0});
  run(logistic, NewtonCgSpec{});
  {
    SqnSpec sqn;
    sqn.options.batch_size = 4;
    sqn.options.pair_cadence = 5;
    sqn.options.strategy = PairStrategy::HessianAction;
    sqn.options.hessian_batch_size = 8;
    sqn.schedule = StepsizeSchedule::fixed(0.2);
    run(logistic, sqn);
  }
  {
    DiagonalSpec diag;
    diag.options.variant = DiagonalVariant::GnRunningAverage;
    diag.options.alpha = 0.05;
    run(logistic, diag);
  }
  run(logistic, CdSpec{CDRule::UniformRandom, CDStepMode::PerCoordinate});
  run(ridge, SdcaSpec{});
  run(quad, ProxSpec{ProxMethod::Ista, 0.0, 0}, 0.2);
  run(quad, ProxSpec{ProxMethod::Fista, 0.0, 0}, 0.2);
  run(quad, ProxSpec{ProxMethod::Split, 0.0, 0}, 0.2);
  run(quad, ProxSpec{ProxMethod::ProxNewton, 0.0, 0}, 0.2);
  run(quad, ProxSpec{ProxMethod::Orthant, 0.0, 0}, 0.2);
}

TEST_CASE("budget experiment smoke run keeps the qualitative ordering") {
  BudgetConfig config;
  config.n = 400;
  config.dim = 10;
  config.lambda = 1e-3;
  config.short_budgets_epochs = {1};
  config.long_budget_epochs = 300;
  config.sg_stepsizes = {0.125, 0.5, 2.0};
  BudgetReport report = budget_experiment(config);
  CHECK(report.pass);
  CHECK(report.rows.size() == 6);
  CHECK(report.curves_csv.find("solver,stepsize,budget_epochs,objective") == 0);
}
