#include <benchmark/benchmark.h>

#include "exfeat/pathlab/explain.hpp"
#include "exfeat/pathlab/grid_features.hpp"
#include "exfeat/pathlab/road_graph.hpp"

using namespace exfeat::pathlab;

namespace {

const SyntheticRoad& road() {
    static const SyntheticRoad instance = make_synthetic_road({12, 12, 64, 3, 0.5, 0.1, 21});
    return instance;
}

} // namespace

static void BM_ShortestPath(benchmark::State& state) {
    const SyntheticRoad& data = road();
    std::size_t s = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(shortest_path(data.graph, data.scenarios.weights[s]).cost);
        s = (s + 1) % data.scenarios.n_scenarios();
    }
}
BENCHMARK(BM_ShortestPath);

static void BM_MostExplainablePath(benchmark::State& state) {
    const SyntheticRoad& data = road();
    const FeatureTable table = build_grid_features(data.graph, data.scenarios, {4, 4, {}}, false);
    std::vector<std::size_t> sample;
    for (std::size_t i = 0; i < 50; ++i) sample.push_back(i);
    const PathDataset history = build_path_dataset(data.graph, data.scenarios, sample, table);

    std::vector<std::size_t> all(history.data.n_features());
    for (std::size_t f = 0; f < all.size(); ++f) all[f] = f;
    const exfeat::FeatureSelection selection(all);
    std::vector<double> query(history.data.n_features());
    std::size_t s = 50;
    for (auto _ : state) {
        for (std::size_t c = 0; c < query.size(); ++c)
            query[c] = table.columns[history.source_columns[c]].values[s];
        benchmark::DoNotOptimize(most_explainable_path(data.graph, history, selection, query,
                                                       data.scenarios.weights[s], 5,
                                                       NeighborWeighting::exp_weighted)
                                     .score);
        s = 50 + (s - 50 + 1) % 14;
    }
}
BENCHMARK(BM_MostExplainablePath);
