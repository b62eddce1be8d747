#ifndef EXFEAT_PATHLAB_GRID_FEATURES_HPP
#define EXFEAT_PATHLAB_GRID_FEATURES_HPP

#include <optional>
#include <string>
#include <vector>

#include "exfeat/pathlab/road_graph.hpp"
#include "exfeat/types.hpp"

namespace exfeat::pathlab {

struct BoundingBox {
    double min_x = 0.0, min_y = 0.0, max_x = 1.0, max_y = 1.0;
};

/// Spatial grid over the road network; the bounding box defaults to the hull
/// of the node coordinates. An edge belongs to the cell holding its
/// midpoint; midpoints exactly on an inner cell boundary go to the cell with
/// the lower index.
struct GridSpec {
    std::size_t rows = 4, cols = 5;
    std::optional<BoundingBox> bounding_box;
};

struct FeatureProvenance {
    enum class Kind { grid_cell, edge } kind = Kind::grid_cell;
    std::size_t cell_row = 0, cell_col = 0;  // grid_cell
    std::size_t edge_id = 0;                 // edge
    std::vector<std::size_t> member_edges;   // edges aggregated into the column
};

/// Candidate feature table: one column per scenario-varying quantity, one
/// value per scenario, plus the provenance of each column.
struct FeatureTable {
    std::vector<FeatureColumn> columns; // length = n_scenarios each
    std::vector<FeatureProvenance> provenance;

    std::size_t n_scenarios() const { return columns.empty() ? 0 : columns.front().values.size(); }
};

/// Grid features (per-cell sums of member edge weights) and optionally one
/// column per edge. Cells without edges and columns constant across all
/// scenarios are dropped. Throws if nothing survives.
FeatureTable build_grid_features(const RoadGraph& graph, const ScenarioSet& scenarios,
                                 const GridSpec& grid, bool include_edge_features);

/// Historic data: the core dataset plus the optimal path of every sampled
/// scenario (needed to steer new solutions towards historic ones).
struct PathDataset {
    Dataset data;
    std::vector<PathSolution> paths;           // aligned with data points
    std::vector<std::size_t> scenario_ids;     // sampled scenario per data point
    std::vector<std::size_t> source_columns;   // feature-table column per dataset column
};

/// Dataset over the sampled scenarios: instance features are the table rows
/// (columns constant on the sample are dropped), the solution distance is
/// the Hamming distance between optimal path indicators.
PathDataset build_path_dataset(const RoadGraph& graph, const ScenarioSet& scenarios,
                               const std::vector<std::size_t>& sampled_ids, const FeatureTable& table);

} // namespace exfeat::pathlab

#endif
