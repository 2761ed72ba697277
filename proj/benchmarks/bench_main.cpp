#include <benchmark/benchmark.h>

#include "locc/prob_vector.hpp"
#include "locc/protocol.hpp"
#include "locc/rng.hpp"
#include "locc/sampling.hpp"
#include "locc/simulator.hpp"
#include "locc/states.hpp"

using namespace locc;

namespace {

// A deterministic transformable pair: uniform source, a mildly skewed target.
std::pair<PureState, PureState> transformable_pair(int d) {
  std::vector<double> uni(d, 1.0 / d);
  std::vector<double> skew(d);
  double sum = 0.0;
  for (int i = 0; i < d; ++i) sum += skew[i] = 1.0 / (i + 1.0);
  for (double& v : skew) v /= sum;
  return {from_schmidt_coefficients(ProbVector(uni), d, d),
          from_schmidt_coefficients(ProbVector(skew), d, d)};
}

void bm_majorizes(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  CounterRng rng(1);
  std::vector<double> a(d), b(d);
  double sa = 0.0, sb = 0.0;
  for (double& v : a) sa += v = rng.uniform01();
  for (double& v : b) sb += v = rng.uniform01();
  for (double& v : a) v /= sa;
  for (double& v : b) v /= sb;
  const ProbVector x(a), y(b);
  for (auto _ : state) benchmark::DoNotOptimize(majorizes(x, y));
}

void bm_schmidt_decompose(benchmark::State& state) {
  const auto d = static_cast<Eigen::Index>(state.range(0));
  const PureState s = random_pure_state(d, d, 7);
  for (auto _ : state) benchmark::DoNotOptimize(schmidt_decompose(s));
}

void bm_synthesize(benchmark::State& state) {
  const auto [psi, phi] = transformable_pair(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(synthesize(psi, phi));
}

void bm_enumerate_branches(benchmark::State& state) {
  const auto [psi, phi] = transformable_pair(static_cast<int>(state.range(0)));
  const Protocol p = synthesize(psi, phi);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_branches(p, psi));
}

}  // namespace

BENCHMARK(bm_majorizes)->Arg(8)->Arg(64)->Arg(512);
BENCHMARK(bm_schmidt_decompose)->Arg(4)->Arg(16)->Arg(64);
BENCHMARK(bm_synthesize)->Arg(3)->Arg(6)->Arg(10);
BENCHMARK(bm_enumerate_branches)->Arg(3)->Arg(6)->Arg(10);

BENCHMARK_MAIN();
