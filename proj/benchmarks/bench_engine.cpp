#include "hilbcalc/builtin_models.hpp"
#include "hilbcalc/hilbert_ring.hpp"
#include "hilbcalc/oracles.hpp"

#include <benchmark/benchmark.h>

#include <sstream>

using namespace hilbcalc;

namespace {

const SurfaceModel& model_for(int i) {
  static const char* names[] = {"P2", "P1xP1", "K3like", "Abelianlike"};
  return builtin_model(names[i]);
}

void BM_HeisenbergAction(benchmark::State& state) {
  const auto& m = model_for(static_cast<int>(state.range(0)));
  std::mt19937_64 rng(1);
  const auto v = oracle::random_vector(m, rng, 6, 20);
  for (auto _ : state)
    for (int c = 0; c < m.size(); ++c) benchmark::DoNotOptimize(heisenberg(m, 2, c, heisenberg(m, -2, c, v)));
}
BENCHMARK(BM_HeisenbergAction)->DenseRange(0, 3);

void BM_Boundary(benchmark::State& state) {
  const auto& m = model_for(0);
  const auto v = fundamental_class(m, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(boundary_apply(m, v));
}
BENCHMARK(BM_Boundary)->DenseRange(2, 8, 2);

// cold memo tables: the commutator recursion from scratch
void BM_ChernCommutatorCold(benchmark::State& state) {
  const auto& m = model_for(3);
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) {
    ChernCalculus chern(m);
    benchmark::DoNotOptimize(chern.chern_commutator(k, m.index_of("l"), 2, m.index_of("a"), 4));
  }
}
BENCHMARK(BM_ChernCommutatorCold)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_CupFixedN(benchmark::State& state) {
  const auto& m = model_for(0);
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(2);
  int d = 0;
  const auto a = oracle::random_homogeneous(m, rng, n, 4, &d);
  const auto b = oracle::random_homogeneous(m, rng, n, 4, &d);
  for (auto _ : state) {
    CupEngine engine(m);
    benchmark::DoNotOptimize(engine.cup(a, b, n));
  }
}
BENCHMARK(BM_CupFixedN)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_StructureTable(benchmark::State& state) {
  const auto& m = model_for(static_cast<int>(state.range(0)));
  const int w = static_cast<int>(state.range(1));
  for (auto _ : state) {
    CupEngine engine(m);
    std::ostringstream out;
    write_structure_table(engine, w, out);
    benchmark::DoNotOptimize(out.str());
  }
}
BENCHMARK(BM_StructureTable)->Args({0, 4})->Args({0, 5})->Args({3, 4})->Unit(benchmark::kMillisecond);

void BM_GeneratorTransition(benchmark::State& state) {
  const auto& m = model_for(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    CupEngine engine(m);
    benchmark::DoNotOptimize(generator_transition(engine, 5));
  }
}
BENCHMARK(BM_GeneratorTransition)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
