#ifndef EXFEAT_PATHLAB_EXPLAIN_HPP
#define EXFEAT_PATHLAB_EXPLAIN_HPP

#include <span>

#include "exfeat/pathlab/grid_features.hpp"
#include "exfeat/pathlab/road_graph.hpp"
#include "exfeat/types.hpp"

namespace exfeat::pathlab {

enum class NeighborWeighting { uniform, exp_weighted };

struct ExplainablePath {
    PathSolution path;            // cost filled under the query weights
    double score = 0.0;           // weighted summed Hamming distance to the neighbor paths
    std::vector<std::size_t> neighbors; // chosen historic data points
};

/// Path most similar to the solutions of the k historic data points nearest
/// to the query feature row under the selected features (distance ties go to
/// the smaller index). Neighbor i carries weight 1 / (1 + distance) in
/// exp_weighted mode and 1 otherwise. The weighted summed Hamming distance
/// is minimized exactly by a shortest path under transformed edge costs
/// sum_i w_i (1 - 2 x^i_e); a negative cycle in those costs aborts with a
/// diagnostic.
ExplainablePath most_explainable_path(const RoadGraph& graph, const PathDataset& history,
                                      const FeatureSelection& selection,
                                      std::span<const double> query_features,
                                      std::span<const double> query_weights, std::size_t k,
                                      NeighborWeighting weighting);

/// Cost of the given path divided by the optimal cost under the same
/// weights; at least 1 whenever the path is feasible.
double relative_length(const PathSolution& path, const RoadGraph& graph,
                       std::span<const double> weights);

} // namespace exfeat::pathlab

#endif
