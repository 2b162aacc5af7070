#include <benchmark/benchmark.h>

#include "smallsphere/energy.hpp"
#include "smallsphere/random.hpp"

using namespace smallsphere;

namespace {

CurvatureAtPoint fixture_weyl() {
  Rng rng(42);
  return random_vacuum_weyl(rng);
}

void BM_BuildGrid(benchmark::State& state) {
  const int degree = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_grid(degree));
}
BENCHMARK(BM_BuildGrid)->Arg(12)->Arg(24);

void BM_BelRobinson(benchmark::State& state) {
  const CurvatureAtPoint c = fixture_weyl();
  for (auto _ : state) benchmark::DoNotOptimize(bel_robinson(c));
}
BENCHMARK(BM_BelRobinson);

void BM_IntegrateW0Sq(benchmark::State& state) {
  const CurvatureAtPoint c = fixture_weyl();
  const SphereGrid g = build_grid(12);
  const ScalarField w0 = w0_field(c);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        integrate_fn([&w0](const Direction& x) { return w0(x) * w0(x); }, g));
}
BENCHMARK(BM_IntegrateW0Sq);

void BM_E5FromPieces(benchmark::State& state) {
  const CurvatureAtPoint c = fixture_weyl();
  const SphereGrid g = build_grid(12);
  Rng rng(7);
  const Observer t0(rng.vec3());
  for (auto _ : state) benchmark::DoNotOptimize(e5_from_pieces(c, t0, g));
}
BENCHMARK(BM_E5FromPieces);

void BM_Minimize(benchmark::State& state) {
  const CurvatureAtPoint c = fixture_weyl();
  for (auto _ : state) benchmark::DoNotOptimize(minimize(c));
}
BENCHMARK(BM_Minimize);

void BM_ProjectBianchi(benchmark::State& state) {
  Rng rng(3);
  const Rank5 raw = random_rank5(rng);
  for (auto _ : state) benchmark::DoNotOptimize(project_bianchi(raw));
}
BENCHMARK(BM_ProjectBianchi);

void BM_NullDecompose(benchmark::State& state) {
  const CurvatureAtPoint c = fixture_weyl();
  Rng rng(9);
  const Direction x = rng.direction();
  for (auto _ : state) benchmark::DoNotOptimize(null_decompose(c, x));
}
BENCHMARK(BM_NullDecompose);

}  // namespace

BENCHMARK_MAIN();
