#ifndef EXFEAT_TESTS_FIXTURES_HPP
#define EXFEAT_TESTS_FIXTURES_HPP

#include <vector>

#include "exfeat/evaluate.hpp"
#include "exfeat/pathlab/road_graph.hpp"
#include "exfeat/types.hpp"

namespace exfeat::tests {

// Three two-edge routing instances: upper edge costs (1, 1.9, 3), lower edge
// costs (1.4, 1.5, 1.4). Instances 2 and 3 share their implemented solution,
// instance 1 differs from both, so the solution distance is 1 for pairs
// involving instance 1 and 0 otherwise.
inline Dataset toy_dataset() {
    FeatureColumn upper{"upper_edge", FeatureKind::numeric, {1.0, 1.9, 3.0}, {}};
    FeatureColumn lower{"lower_edge", FeatureKind::numeric, {1.4, 1.5, 1.4}, {}};
    std::vector<double> solution_distance = {
        0.0, 1.0, 1.0, //
        1.0, 0.0, 0.0, //
        1.0, 0.0, 0.0,
    };
    return Dataset({upper, lower}, std::move(solution_distance));
}

// Four historic budget-allocation instances, two solution features each
// (project selection rate, best-sector indicator).
inline std::vector<std::vector<double>> knapsack_solution_features() {
    return {{0.25, 0.0}, {0.25, 0.0}, {0.5, 1.0}, {0.57, 1.0}};
}

// Five candidate instance features of the same four instances: budget, best
// sector (categorical), cost-benefit indicator, project count, benefit ratio.
inline Dataset knapsack_dataset() {
    FeatureColumn budget{"budget", FeatureKind::numeric, {5.0, 14.0, 6.0, 12.0}, {}};
    FeatureColumn best_sector{"best_sector",
                              FeatureKind::categorical,
                              {0.0, 1.0, 1.0, 0.0},
                              {"healthcare", "education"}};
    FeatureColumn ratio_indicator{"ratio_over_two", FeatureKind::numeric, {1.0, 1.0, 0.0, 0.0}, {}};
    FeatureColumn project_count{"project_count", FeatureKind::numeric, {8.0, 8.0, 8.0, 7.0}, {}};
    FeatureColumn benefit_ratio{"benefit_ratio", FeatureKind::numeric, {1.04, 1.07, 1.50, 1.33}, {}};
    return Dataset({budget, best_sector, ratio_indicator, project_count, benefit_ratio},
                   solution_distance_matrix(knapsack_solution_features()));
}

// Directed diamond with six nodes and a few cross edges: several distinct
// source-target paths for brute-force comparisons.
inline pathlab::RoadGraph small_graph() {
    std::vector<pathlab::RoadNode> nodes = {
        {0, 0.0, 1.0}, {1, 1.0, 0.0}, {2, 1.0, 2.0}, {3, 2.0, 0.0}, {4, 2.0, 2.0}, {5, 3.0, 1.0},
    };
    std::vector<pathlab::RoadEdge> edges = {
        {0, 0, 1}, {1, 0, 2}, {2, 1, 3}, {3, 2, 4}, {4, 1, 4}, {5, 2, 3}, {6, 3, 5}, {7, 4, 5}, {8, 3, 4},
    };
    return pathlab::RoadGraph(std::move(nodes), std::move(edges), 0, 5);
}

} // namespace exfeat::tests

#endif
