#include <benchmark/benchmark.h>

#include <random>

#include "qdg/commvar.hpp"
#include "qdg/corpus.hpp"
#include "qdg/dg.hpp"
#include "qdg/hilbert.hpp"
#include "qdg/hochschild.hpp"
#include "qdg/repvar.hpp"

using namespace qdg;

static void BM_CodimCheck(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  auto parts = partitions(n);
  for (auto _ : state)
    for (const auto& l : parts) benchmark::DoNotOptimize(codim_theorem_check({{0, l}}));
}
BENCHMARK(BM_CodimCheck)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

static void BM_DSquaredG3(benchmark::State& state) {
  DgPresentation p = ginzburg3(named_potential(builtin_quiver("s3"), "xyz-commutator"));
  for (auto _ : state) benchmark::DoNotOptimize(check_d_squared(p));
}
BENCHMARK(BM_DSquaredG3);

static void BM_HH0Dimension(benchmark::State& state) {
  QuiverPtr q = builtin_quiver("s3");
  for (auto _ : state) benchmark::DoNotOptimize(hh0_dimension(*q, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_HH0Dimension)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

static void BM_CyCocycle(benchmark::State& state) {
  QuiverPtr q = builtin_quiver("a2tilde");
  for (auto _ : state) benchmark::DoNotOptimize(verify_cy_cocycle(*q));
}
BENCHMARK(BM_CyCocycle)->Unit(benchmark::kMillisecond);

static void BM_LambdaMuFrameRank(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  Partition mu{n - 1, 1};
  for (auto _ : state) {
    LambdaMuSample s = sample_lambda_mu(mu, 1);
    benchmark::DoNotOptimize(frame_rank(s.frame));
  }
}
BENCHMARK(BM_LambdaMuFrameRank)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

static void BM_ComponentSample(benchmark::State& state) {
  NestedPartition m{{2, 1}, {1}};
  for (auto _ : state) {
    ComponentSample s = sample_component(m, 1);
    benchmark::DoNotOptimize(adhm_frame_rank(s.frame));
  }
}
BENCHMARK(BM_ComponentSample)->Unit(benchmark::kMillisecond);

static void BM_PotentialGradient(benchmark::State& state) {
  QuiverPtr q = builtin_quiver("s3");
  Potential w = named_potential(q, "xyz-commutator");
  std::mt19937_64 rng(1);
  RepQ rho = random_rep_q(q, uniform_dims(*q, static_cast<int>(state.range(0))), rng);
  for (auto _ : state) benchmark::DoNotOptimize(potential_gradient(w, rho));
}
BENCHMARK(BM_PotentialGradient)->DenseRange(1, 4);

static void BM_TangentComplex(benchmark::State& state) {
  std::mt19937_64 rng(1);
  RepQ rho = sample_commuting_rep(static_cast<int>(state.range(0)), rng);
  for (auto _ : state) {
    auto c = tangent_complex_g2(rho);
    benchmark::DoNotOptimize(duality_defect(c));
  }
}
BENCHMARK(BM_TangentComplex)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
