#include <benchmark/benchmark.h>

#include "gengm/objective.hpp"
#include "gengm/rng.hpp"
#include "gengm/simulate.hpp"

namespace {

using namespace gengm;

struct Problem {
  ParameterPair theta;
  CovarianceTriplet cov;
  RegularizationConfig cfg;
};

Problem make_problem(Index q, Index p) {
  ScenarioSpec spec;
  spec.id = static_cast<int>(q);
  spec.p = p;
  spec.n_train = 150;
  spec.n_valid = 1;
  spec.seed = 1;
  const ScenarioSample s = gen_scenario(spec);
  Problem out{s.truth, sample_covariances(s.train), {}};
  out.cfg.lambda = 0.05;
  out.cfg.mu = 0.05;
  out.cfg.eta = 1.0;
  out.cfg.beta = 2.0;
  out.cfg.structure = first_diff_structure(p);
  return out;
}

void BM_EvalSmooth(benchmark::State& state) {
  const Problem pr = make_problem(state.range(0), state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(eval_smooth(pr.theta, pr.cov, pr.cfg));
}
BENCHMARK(BM_EvalSmooth)->Args({2, 40})->Args({2, 100})->Args({3, 365});

void BM_OmegaYXBlock(benchmark::State& state) {
  const Problem pr = make_problem(state.range(0), state.range(1));
  const OmegaYXBlock block(pr.theta.omega_yy(), pr.cov, pr.cfg);
  for (auto _ : state) benchmark::DoNotOptimize(block.eval(pr.theta.omega_yx()));
}
BENCHMARK(BM_OmegaYXBlock)->Args({2, 40})->Args({2, 100})->Args({3, 365});

void BM_OmegaYYBlock(benchmark::State& state) {
  const Problem pr = make_problem(state.range(0), state.range(1));
  const OmegaYYBlock block(pr.theta.omega_yx(), pr.cov, pr.cfg);
  const DenseMatrix oyy = pr.theta.omega_yy().matrix();
  for (auto _ : state) benchmark::DoNotOptimize(block.eval(oyy));
}
BENCHMARK(BM_OmegaYYBlock)->Args({2, 100})->Args({3, 365});

}  // namespace
