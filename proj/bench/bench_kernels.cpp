// Serial reference vs OpenMP kernels, and the replication harness with one
// vs all workers.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "alphatest/dgp.hpp"
#include "alphatest/kernels.hpp"
#include "alphatest/matrix_core.hpp"
#include "alphatest/mc_harness.hpp"

using namespace alphatest;

namespace {

struct Inputs {
  Matrix returns;
  Matrix m_f;
  double leverage;
  int dof;
};

Inputs make_inputs(std::size_t n, std::size_t periods) {
  ScenarioConfig c;
  c.n = n;
  c.periods = periods;
  const auto d = ScenarioSampler(c).draw(0, 0);
  Inputs in{d.panel.returns(), annihilator(d.panel.factors()), 0.0,
            static_cast<int>(periods) - 4};
  in.leverage = in.m_f.sum();
  return in;
}

void BM_ResidualizeSerial(benchmark::State& state) {
  const Inputs in = make_inputs(state.range(0), state.range(1));
  for (auto _ : state)
    benchmark::DoNotOptimize(kernels::reference::residualize(in.returns, in.m_f, in.leverage, in.dof));
}

void BM_ResidualizeOmp(benchmark::State& state) {
  const Inputs in = make_inputs(state.range(0), state.range(1));
  for (auto _ : state)
    benchmark::DoNotOptimize(kernels::omp::residualize(in.returns, in.m_f, in.leverage, in.dof));
}

void BM_CrossProductSerial(benchmark::State& state) {
  const Inputs in = make_inputs(state.range(0), state.range(1));
  for (auto _ : state)
    benchmark::DoNotOptimize(kernels::reference::cross_product(in.returns, in.dof));
}

void BM_CrossProductOmp(benchmark::State& state) {
  const Inputs in = make_inputs(state.range(0), state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::omp::cross_product(in.returns, in.dof));
}

void BM_Harness(benchmark::State& state) {
  ScenarioConfig c;
  const ScenarioSampler sampler(c);
  const int workers = state.range(0) == 0 ? omp_get_max_threads() : static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(simulate(sampler, 0, 16, workers));
  state.counters["workers"] = workers;
}

}  // namespace

BENCHMARK(BM_ResidualizeSerial)->Args({200, 100})->Args({500, 400})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ResidualizeOmp)->Args({200, 100})->Args({500, 400})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CrossProductSerial)->Args({200, 100})->Args({500, 400})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CrossProductOmp)->Args({200, 100})->Args({500, 400})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Harness)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
