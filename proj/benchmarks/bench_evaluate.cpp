#include <benchmark/benchmark.h>

#include "exfeat/evaluate.hpp"
#include "exfeat/rng.hpp"
#include "exfeat/synthetic.hpp"

using namespace exfeat;

static void BM_EvaluateSelection(benchmark::State& state) {
    const std::size_t n = state.range(0);
    const std::size_t selected = state.range(1);
    const Dataset data = generate_synthetic_dataset(n, 16, 4, 1);
    Rng rng(7);
    const FeatureSelection sel(rng.sample_without_replacement(16, selected));
    const EvalConfig config{5, TieMode::pessimistic, 1e-9};
    for (auto _ : state) {
        benchmark::DoNotOptimize(evaluate_selection(data, sel, config).objective);
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_EvaluateSelection)
    ->Args({50, 2})
    ->Args({200, 2})
    ->Args({200, 8})
    ->Args({800, 8})
    ->Complexity(benchmark::oNSquared);

static void BM_ClassifyNeighbors(benchmark::State& state) {
    const Dataset data = generate_synthetic_dataset(state.range(0), 8, 4, 3);
    const FeatureSelection sel({0, 3, 5});
    const EvalConfig config{5, TieMode::pessimistic, 1e-9};
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(classify_neighbors(data, i, sel, config));
        i = (i + 1) % data.n_points();
    }
}
BENCHMARK(BM_ClassifyNeighbors)->Arg(200)->Arg(800);
