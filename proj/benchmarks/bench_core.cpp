#include <benchmark/benchmark.h>

#include "stochopt/core/batch.hpp"
#include "stochopt/core/rng.hpp"
#include "stochopt/so/lbfgs.hpp"

using namespace stochopt;

static void BM_SubstreamDraws(benchmark::State& state) {
  RandomStream stream(1);
  index_t k = 0;
  for (auto _ : state) {
    Substream rng = stream.at(++k, Purpose::BatchSampling);
    benchmark::DoNotOptimize(rng.normal());
  }
}
BENCHMARK(BM_SubstreamDraws);

static void BM_SampleBatchWithoutReplacement(benchmark::State& state) {
  RandomStream stream(1);
  index_t k = 0;
  const auto size = state.range(0);
  for (auto _ : state) {
    Batch b = sample_batch(stream, ++k, size, SamplingMode::WithoutReplacement,
                           100000);
    benchmark::DoNotOptimize(b.indices.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SampleBatchWithoutReplacement)->Range(16, 4096)->Complexity();

static void BM_TwoLoopDirection(benchmark::State& state) {
  const int d = 1000;
  const auto m = state.range(0);
  CurvaturePairStore store(m);
  Substream rng = RandomStream(3).at(0, Purpose::Init);
  for (index_t j = 0; j < m; ++j) {
    Vector s(d), v(d);
    for (int i = 0; i < d; ++i) {
      s[i] = rng.normal();
      v[i] = 2.0 * s[i];
    }
    store.offer(std::move(s), std::move(v));
  }
  Vector g(d);
  for (int i = 0; i < d; ++i) g[i] = rng.normal();
  for (auto _ : state) {
    benchmark::DoNotOptimize(two_loop_direction(store, g));
  }
}
BENCHMARK(BM_TwoLoopDirection)->DenseRange(2, 10, 4);
