#include <benchmark/benchmark.h>

#include "spectral_clt/centering.hpp"
#include "spectral_clt/contour.hpp"
#include "spectral_clt/mc_lab.hpp"

namespace {

using namespace spectral_clt;

Backend backend_of(const benchmark::State& state) {
  return state.range(0) == 0 ? Backend::serial : Backend::openmp;
}

// Fixed node count (no refinement) so both backends do identical work.
void BM_ContourTerms(benchmark::State& state) {
  const auto model = SpikedModel::create(400, 800, {{6.0, 2}, {1.3, 3}, {0.4, 1}});
  const auto f = functions::lrt_g();
  const Contour contour = build_contour(model);
  QuadratureOptions options;
  options.backend = backend_of(state);
  options.rel_tol = 0.0;
  options.max_nodes = static_cast<int>(state.range(1));
  for (auto _ : state) {
    try {
      benchmark::DoNotOptimize(contour_terms(f, model, contour, options));
    } catch (const std::exception&) {
      // rel_tol = 0 never converges; the throw marks max_nodes reached
    }
  }
  state.SetItemsProcessed(state.iterations() * state.range(1));
}
BENCHMARK(BM_ContourTerms)->ArgsProduct({{0, 1}, {1 << 12, 1 << 16}})->Unit(benchmark::kMillisecond);

void BM_Replicates(benchmark::State& state) {
  ExperimentConfig config{SpikedModel::create(static_cast<int>(state.range(1)),
                                              2 * static_cast<int>(state.range(1)), {{3.0, 1}})};
  config.reps = 8;
  config.seed = 7;
  config.backend = backend_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(empirical_size_power(config));
  state.SetItemsProcessed(state.iterations() * config.reps);
}
BENCHMARK(BM_Replicates)->ArgsProduct({{0, 1}, {100, 200}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
