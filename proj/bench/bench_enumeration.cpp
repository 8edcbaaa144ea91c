#include "flatdpp/diagnostics.hpp"
#include "flatdpp/enumeration.hpp"
#include "flatdpp/precise.hpp"

#include <benchmark/benchmark.h>

using namespace flatdpp;

namespace {

Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

void label(benchmark::State& state) { state.SetLabel(state.range(0) == 0 ? "serial" : "parallel"); }

// All 2^n subsets of a random extended L-ensemble.
void BM_BruteForce(benchmark::State& state) {
  const Nnp e = random_nnp(static_cast<int>(state.range(1)), 2, 1);
  for (auto _ : state) {
    auto d = brute_force_distribution(e, std::nullopt, mode(state));
    benchmark::DoNotOptimize(d.probs().data());
  }
  state.SetItemsProcessed(state.iterations() * (int64_t{1} << state.range(1)));
  label(state);
}
BENCHMARK(BM_BruteForce)->ArgsProduct({{0, 1}, {12, 16}})->Unit(benchmark::kMillisecond);

// m-subsets of a flat kernel matrix in extended precision.
void BM_KernelEnsemble(benchmark::State& state) {
  const PointSet ps = generate_points(PointGenerator::uniform, static_cast<int>(state.range(1)), 1, 4);
  const KernelEnsemble ens(ps, builtin_kernel("gaussian"), 1e-2, 1.0, 0, 4);
  for (auto _ : state) {
    auto d = ens.distribution(4, mode(state));
    benchmark::DoNotOptimize(d.probs().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(enumeration::binomial(static_cast<int>(state.range(1)), 4)));
  label(state);
}
BENCHMARK(BM_KernelEnsemble)->ArgsProduct({{0, 1}, {12, 20}})->Unit(benchmark::kMillisecond);

// Conditional density of one more point over a grid.
void BM_ConditionalDensity(benchmark::State& state) {
  RowMatrix y(4, 1);
  y << 0.1, 0.3, 0.5, 0.9;
  const PointSet grid = generate_points(PointGenerator::grid, 400, 1, 0);
  const SetLogWeight w = kernel_set_weight(builtin_kernel("exponential"), 0.1, 5);
  for (auto _ : state) {
    auto dens = conditional_density(w, y, grid.coords(), mode(state));
    benchmark::DoNotOptimize(dens.data());
  }
  label(state);
}
BENCHMARK(BM_ConditionalDensity)->ArgsProduct({{0, 1}, {400}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
