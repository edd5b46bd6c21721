#include <benchmark/benchmark.h>

#include "stochopt/nr/saga.hpp"
#include "stochopt/nr/svrg.hpp"
#include "stochopt/problems/linear_loss.hpp"
#include "stochopt/problems/synthetic.hpp"
#include "stochopt/sg/sg.hpp"

using namespace stochopt;

namespace {

const LogisticProblem& bench_problem() {
  static LogisticProblem problem(make_logistic_dataset(2000, 100, 7), 1e-3);
  return problem;
}

}  // namespace

static void BM_LogisticBatchGradient(benchmark::State& state) {
  const LogisticProblem& problem = bench_problem();
  RandomStream stream(1);
  Vector w = Vector::Zero(problem.dim());
  index_t k = 0;
  const auto b = state.range(0);
  for (auto _ : state) {
    Batch batch = draw_batch(problem, stream, ++k, b, SamplingMode::WithReplacement);
    benchmark::DoNotOptimize(problem.batch_gradient(w, batch.indices));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LogisticBatchGradient)->Range(1, 1024)->Complexity();

static void BM_SgEpoch(benchmark::State& state) {
  const LogisticProblem& problem = bench_problem();
  StepsizeSchedule schedule = StepsizeSchedule::fixed(0.25);
  for (auto _ : state) {
    RandomStream stream(11);
    SGState sg = SGState::init(Vector::Zero(problem.dim()));
    for (index_t k = 0; k < problem.num_components(); ++k) {
      sg_step(sg, problem, schedule, 1, stream);
    }
    benchmark::DoNotOptimize(sg.w);
  }
}
BENCHMARK(BM_SgEpoch);

static void BM_SagaEpoch(benchmark::State& state) {
  const LogisticProblem& problem = bench_problem();
  double alpha = saga_stepsize_unknown_c(problem.lipschitz_bound());
  for (auto _ : state) {
    RandomStream stream(13);
    SagaState saga(Vector::Zero(problem.dim()), problem);
    saga_init_full(saga, problem);
    for (index_t k = 0; k < problem.num_components(); ++k) {
      saga_step(saga, problem, alpha, stream);
    }
    benchmark::DoNotOptimize(saga.w);
  }
}
BENCHMARK(BM_SagaEpoch);

static void BM_SvrgOuter(benchmark::State& state) {
  const LogisticProblem& problem = bench_problem();
  double alpha = 0.1 / problem.lipschitz_bound();
  RandomStream stream(17);
  Vector w = Vector::Zero(problem.dim());
  index_t k = 0, adp = 0;
  for (auto _ : state) {
    w = svrg_outer(problem, w, alpha, problem.num_components(),
                   SvrgOption::InnerAverage, stream, ++k, adp);
    benchmark::DoNotOptimize(w);
  }
}
BENCHMARK(BM_SvrgOuter);
