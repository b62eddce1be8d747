#include "exfeat/pathlab/explain.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "exfeat/evaluate.hpp"

namespace exfeat::pathlab {

ExplainablePath most_explainable_path(const RoadGraph& graph, const PathDataset& history,
                                      const FeatureSelection& selection,
                                      std::span<const double> query_features,
                                      std::span<const double> query_weights, std::size_t k,
                                      NeighborWeighting weighting) {
    const Dataset& data = history.data;
    if (selection.empty()) throw std::invalid_argument("empty feature selection");
    if (k == 0 || k > data.n_points()) throw std::invalid_argument("k must satisfy 1 <= k <= N");
    if (query_features.size() != data.n_features())
        throw std::invalid_argument("query feature row has wrong length");
    if (query_weights.size() != graph.n_edges())
        throw std::invalid_argument("query weight vector has wrong length");

    // selected 1-norm distance from the query row to every historic point
    std::vector<std::pair<double, std::size_t>> ranked(data.n_points());
    for (std::size_t i = 0; i < data.n_points(); ++i) {
        double dist = 0.0;
        for (std::size_t f : selection.indices) {
            const FeatureColumn& col = data.feature(f);
            if (col.kind == FeatureKind::categorical)
                dist += col.values[i] == query_features[f] ? 0.0 : 1.0;
            else
                dist += std::abs(col.values[i] - query_features[f]);
        }
        ranked[i] = {dist, i};
    }
    std::sort(ranked.begin(), ranked.end());

    ExplainablePath result;
    std::vector<double> weight(data.n_points(), 0.0);
    for (std::size_t t = 0; t < k; ++t) {
        const auto [dist, i] = ranked[t];
        result.neighbors.push_back(i);
        weight[i] = weighting == NeighborWeighting::exp_weighted ? 1.0 / (1.0 + dist) : 1.0;
    }
    std::sort(result.neighbors.begin(), result.neighbors.end());

    // sum_i w_i Hamming(x, x^i) = sum_e x_e c_e + constant
    std::vector<double> costs(graph.n_edges(), 0.0);
    double constant = 0.0;
    for (std::size_t i : result.neighbors) {
        const PathSolution& historic = history.paths[i];
        for (std::size_t e = 0; e < graph.n_edges(); ++e) {
            costs[e] += weight[i] * (1.0 - 2.0 * static_cast<double>(historic.edge_indicator[e]));
            constant += weight[i] * static_cast<double>(historic.edge_indicator[e]);
        }
    }

    PathSolution best = shortest_path_general(graph, costs);
    result.score = best.cost + constant;
    best.cost = path_cost(best, query_weights);
    result.path = std::move(best);
    return result;
}

double relative_length(const PathSolution& path, const RoadGraph& graph,
                       std::span<const double> weights) {
    const PathSolution optimal = shortest_path(graph, weights);
    const double optimal_cost = optimal.cost;
    if (!(optimal_cost > 0.0)) throw std::runtime_error("optimal path cost must be positive");
    return path_cost(path, weights) / optimal_cost;
}

} // namespace exfeat::pathlab
