#include <benchmark/benchmark.h>

#include "cornerlab/energy.hpp"
#include "cornerlab/frequency.hpp"
#include "cornerlab/oracle.hpp"
#include "cornerlab/pipeline.hpp"
#include "cornerlab/weiss.hpp"

using namespace cornerlab;

namespace {

ProblemSpec stokes() {
  ProblemSpec s;
  s.alpha = 0;
  s.beta = 1;
  s.stag = Type1{-1.0, Force::Down};
  s.domain = {-2, -1, 0, 1};
  return s;
}

// Seeded local solve as used by the shipped configs.
void BM_SolveSeeded(benchmark::State& state) {
  const ProblemSpec s = stokes();
  const GridSpec g = GridSpec::covering(s.domain, int(state.range(0)));
  const ScalarField data = oracle_field(s, g);
  SolverParams p;
  p.start_from_data = true;
  p.continuation_stages = 1;
  p.smoothing_eps = 1e-6;
  for (auto _ : state) benchmark::DoNotOptimize(minimize_energy(s, g, data, p).energy);
}
BENCHMARK(BM_SolveSeeded)->Arg(65)->Arg(129)->Arg(257)->Unit(benchmark::kMillisecond);

// Continuation from the harmonic extension, the unseeded default.
void BM_SolveHarmonic(benchmark::State& state) {
  const ProblemSpec s = stokes();
  const GridSpec g = GridSpec::covering(s.domain, int(state.range(0)));
  const ScalarField data = oracle_field(s, g);
  for (auto _ : state) benchmark::DoNotOptimize(minimize_energy(s, g, data).energy);
}
BENCHMARK(BM_SolveHarmonic)->Arg(65)->Arg(129)->Unit(benchmark::kMillisecond);

void BM_WeissProfile(benchmark::State& state) {
  const ProblemSpec s = stokes();
  const GridSpec g = GridSpec::covering(s.domain, int(state.range(0)));
  const ScalarField u = oracle_field(s, g);
  const auto sp = stagnation_point_for(s);
  const auto radii = log_spaced(0.05, 0.45, 32);
  for (auto _ : state) benchmark::DoNotOptimize(weiss_profile(s, u, sp, radii).M.back());
}
BENCHMARK(BM_WeissProfile)->Arg(129)->Arg(257)->Arg(513)->Unit(benchmark::kMillisecond);

void BM_FrequencyProfile(benchmark::State& state) {
  const ProblemSpec s = stokes();
  const GridSpec g = GridSpec::covering(s.domain, int(state.range(0)));
  const ScalarField u = oracle_field(s, g);
  const auto sp = stagnation_point_for(s);
  const auto radii = log_spaced(0.05, 0.45, 16);
  for (auto _ : state) benchmark::DoNotOptimize(frequency_profile(s, u, sp, radii).H.back());
}
BENCHMARK(BM_FrequencyProfile)->Arg(257)->Unit(benchmark::kMillisecond);

void BM_AnglePairs(benchmark::State& state) {
  const double alpha = 1.0 + 0.5 * double(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_angle_pairs(alpha, 1.0).size());
}
BENCHMARK(BM_AnglePairs)->DenseRange(1, 4);

}  // namespace
BENCHMARK_MAIN();
