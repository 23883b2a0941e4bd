#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "bispec/bounds.hpp"
#include "bispec/graph.hpp"
#include "bispec/search.hpp"
#include "bispec/spectral.hpp"

namespace {

using namespace bispec;

BipartiteGraph random_graph(int p, int q, double density, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(density);
  std::vector<std::uint64_t> rows(p, 0);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < q; ++j)
      if (coin(rng))
        rows[i] |= std::uint64_t{1} << j;
  return BipartiteGraph(p, q, rows);
}

void BM_SpectralRadius(benchmark::State &state)
{
  auto const n = static_cast<int>(state.range(0));
  auto const g = random_graph(n, n, 0.5, 1);
  for (auto _ : state)
    benchmark::DoNotOptimize(spectral_radius(g));
}
BENCHMARK(BM_SpectralRadius)->Arg(4)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_CanonicalForm(benchmark::State &state)
{
  auto const n = static_cast<int>(state.range(0));
  auto const g = random_graph(n, n, 0.5, 2);
  for (auto _ : state)
    benchmark::DoNotOptimize(canonical_form(g));
}
BENCHMARK(BM_CanonicalForm)->DenseRange(3, 7);

void BM_PhiGrid(benchmark::State &state)
{
  auto const n = static_cast<int>(state.range(0));
  auto const g = random_graph(n, n, 0.5, 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(phi_grid(g));
}
BENCHMARK(BM_PhiGrid)->Arg(4)->Arg(16)->Arg(64);

void BM_ScalingCertificate(benchmark::State &state)
{
  auto const g = random_graph(16, 16, 0.5, 4);
  for (auto _ : state)
    benchmark::DoNotOptimize(scaling_certificate(g, 8, 8));
}
BENCHMARK(BM_ScalingCertificate);

void BM_EnumerateClasses(benchmark::State &state)
{
  auto const p = static_cast<int>(state.range(0));
  auto const q = static_cast<int>(state.range(1));
  auto const e = p * q / 2;
  for (auto _ : state) {
    long classes = 0;
    for_each_class({p, q, e}, [&](BipartiteGraph const &) { ++classes; });
    benchmark::DoNotOptimize(classes);
  }
}
BENCHMARK(BM_EnumerateClasses)->Args({3, 3})->Args({3, 4})->Args({4, 4})
    ->Unit(benchmark::kMillisecond);

void BM_MaxSpectral(benchmark::State &state)
{
  for (auto _ : state)
    benchmark::DoNotOptimize(max_spectral({4, 5, 10}));
}
BENCHMARK(BM_MaxSpectral)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
