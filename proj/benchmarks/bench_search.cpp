#include <benchmark/benchmark.h>

#include "exfeat/solvers.hpp"
#include "exfeat/synthetic.hpp"

using namespace exfeat;

static void BM_SwapSearch(benchmark::State& state) {
    const Dataset data = generate_synthetic_dataset(state.range(0), state.range(1), 4, 11);
    KOptConfig config;
    config.selection_size = 4;
    config.swap_size = 1;
    config.restarts = 2;
    config.seed = 5;
    const EvalConfig eval_config{5, TieMode::pessimistic, 1e-9};
    for (auto _ : state) {
        benchmark::DoNotOptimize(k_opt_search(data, config, eval_config).best_objective);
    }
}
BENCHMARK(BM_SwapSearch)->Args({60, 20})->Args({120, 40})->Unit(benchmark::kMillisecond);

static void BM_ExactEnumeration(benchmark::State& state) {
    const Dataset data = generate_synthetic_dataset(30, state.range(0), 4, 13);
    const EvalConfig eval_config{3, TieMode::pessimistic, 1e-9};
    for (auto _ : state) {
        benchmark::DoNotOptimize(exact_enumeration(data, 3, eval_config).best_objective);
    }
}
BENCHMARK(BM_ExactEnumeration)->Arg(10)->Arg(16)->Unit(benchmark::kMillisecond);
