#include <benchmark/benchmark.h>

#include "qlan/channels.hpp"
#include "qlan/experiments.hpp"
#include "qlan/metrics.hpp"
#include "qlan/models.hpp"
#include "qlan/schur_weyl.hpp"

using namespace qlan;

static void BM_PairingDP(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Spectrum mu({0.5, 0.3, 0.2});
  const YoungDiagram shape = proportional_diagram(mu, n);
  const MVector m(3, {1, 0, 1}), l(3, {0, 1, 0});
  const MatrixXc U = random_unitary(3, 1);
  for (auto _ : state) benchmark::DoNotOptimize(symmetrizer_pairing(shape, m, l, U));
}
BENCHMARK(BM_PairingDP)->Arg(13)->Arg(52)->Arg(208);

static void BM_GramMatrix(benchmark::State& state) {
  const YoungDiagram shape({26, 16, 10});
  const auto basis = enumerate_m_vectors(shape, 3, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(gram_matrix(shape, basis));
  state.counters["basis"] = static_cast<double>(basis.size());
}
BENCHMARK(BM_GramMatrix)->Arg(2)->Arg(4);

static void BM_BlockWeights(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Spectrum mu({0.5, 0.3, 0.2});
  const auto shapes = enumerate_diagrams(n, 3);
  for (auto _ : state) {
    double tot = 0.0;
    for (const auto& s : shapes) tot += block_weight(s, mu, {0.1, -0.1}, n);
    benchmark::DoNotOptimize(tot);
  }
}
BENCHMARK(BM_BlockWeights)->Arg(50)->Arg(200);

static void BM_ConvergePoint(benchmark::State& state) {
  ExperimentConfig cfg;
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(converge_point(cfg, n).cq.total);
}
BENCHMARK(BM_ConvergePoint)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_BruteForceBlocks(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const MatrixXc rho = rho_theta(Spectrum({0.7, 0.3}), LocalParams{{0.2}, {{0.5, 0.3}}, {}}, n);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_blocks(rho, n));
}
BENCHMARK(BM_BruteForceBlocks)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
