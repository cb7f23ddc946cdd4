#include <benchmark/benchmark.h>

#include "gengm/evaluate.hpp"
#include "gengm/simulate.hpp"
#include "gengm/solver.hpp"

namespace {

using namespace gengm;

ScenarioSample scenario(int id, Index p) {
  ScenarioSpec spec;
  spec.id = id;
  spec.p = p;
  spec.n_valid = 1;
  spec.seed = 2;
  return gen_scenario(spec);
}

void BM_Fit(benchmark::State& state) {
  const ScenarioSample s = scenario(2, state.range(0));
  const CovarianceTriplet cov = sample_covariances(s.train);
  RegularizationConfig cfg;
  cfg.lambda = 0.05;
  cfg.mu = 0.05;
  cfg.eta = static_cast<double>(state.range(1));
  cfg.beta = 2.0;
  cfg.structure = first_diff_structure(s.truth.p());
  for (auto _ : state) benchmark::DoNotOptimize(fit(cov, cfg, FitSettings{}));
}
BENCHMARK(BM_Fit)->Args({40, 0})->Args({40, 10})->Args({100, 10})->Unit(benchmark::kMillisecond);

void BM_FitGrid(benchmark::State& state) {
  const ScenarioSample s = scenario(2, 40);
  const CovarianceTriplet cov = sample_covariances(s.train);
  CvGrid grid;
  grid.lambdas = {0.05};
  grid.mus = CvGrid::log_axis(0.005, 0.5, 6);
  grid.etas = {1.0};
  grid.beta = 2.0;
  for (auto _ : state) benchmark::DoNotOptimize(fit_grid(cov, first_diff_structure(40), grid, FitSettings{}));
}
BENCHMARK(BM_FitGrid)->Unit(benchmark::kMillisecond);

void BM_LassoBaseline(benchmark::State& state) {
  const ScenarioSample s = scenario(2, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fit_lasso_baseline(s.train, 0.05, OwlqnSettings{}));
}
BENCHMARK(BM_LassoBaseline)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace
