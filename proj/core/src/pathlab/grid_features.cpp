#include "exfeat/pathlab/grid_features.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "exfeat/evaluate.hpp"

namespace exfeat::pathlab {

namespace {

// Cell coordinate along one axis; exact boundary hits go to the lower cell.
std::size_t cell_coordinate(double value, double lo, double hi, std::size_t cells) {
    if (cells == 1) return 0;
    const double width = (hi - lo) / static_cast<double>(cells);
    if (width <= 0.0) return 0;
    double raw = std::floor((value - lo) / width);
    raw = std::clamp(raw, 0.0, static_cast<double>(cells - 1));
    auto cell = static_cast<std::size_t>(raw);
    if (cell > 0 && value == lo + static_cast<double>(cell) * width) --cell;
    return cell;
}

bool column_is_constant(const FeatureColumn& col) { return col.is_constant(); }

} // namespace

FeatureTable build_grid_features(const RoadGraph& graph, const ScenarioSet& scenarios,
                                 const GridSpec& grid, bool include_edge_features) {
    if (grid.rows == 0 || grid.cols == 0) throw std::invalid_argument("grid needs at least one cell");
    if (scenarios.n_edges != graph.n_edges())
        throw std::invalid_argument("scenario set does not match the graph edge count");
    if (scenarios.n_scenarios() == 0) throw std::invalid_argument("scenario set is empty");

    BoundingBox box;
    if (grid.bounding_box) {
        box = *grid.bounding_box;
    } else {
        box.min_x = box.max_x = graph.node(0).x;
        box.min_y = box.max_y = graph.node(0).y;
        for (std::size_t i = 1; i < graph.n_nodes(); ++i) {
            box.min_x = std::min(box.min_x, graph.node(i).x);
            box.max_x = std::max(box.max_x, graph.node(i).x);
            box.min_y = std::min(box.min_y, graph.node(i).y);
            box.max_y = std::max(box.max_y, graph.node(i).y);
        }
    }

    std::vector<std::vector<std::size_t>> cell_members(grid.rows * grid.cols);
    for (std::size_t e = 0; e < graph.n_edges(); ++e) {
        const auto [mx, my] = graph.edge_midpoint(e);
        const std::size_t col = cell_coordinate(mx, box.min_x, box.max_x, grid.cols);
        const std::size_t row = cell_coordinate(my, box.min_y, box.max_y, grid.rows);
        cell_members[row * grid.cols + col].push_back(e);
    }

    const std::size_t n_scenarios = scenarios.n_scenarios();
    FeatureTable table;
    for (std::size_t r = 0; r < grid.rows; ++r) {
        for (std::size_t c = 0; c < grid.cols; ++c) {
            const auto& members = cell_members[r * grid.cols + c];
            if (members.empty()) continue;
            FeatureColumn col;
            col.name = "cell_r" + std::to_string(r) + "_c" + std::to_string(c);
            col.kind = FeatureKind::numeric;
            col.values.resize(n_scenarios, 0.0);
            for (std::size_t s = 0; s < n_scenarios; ++s) {
                double sum = 0.0;
                for (std::size_t e : members) sum += scenarios.weights[s][e];
                col.values[s] = sum;
            }
            if (column_is_constant(col)) continue;
            FeatureProvenance prov;
            prov.kind = FeatureProvenance::Kind::grid_cell;
            prov.cell_row = r;
            prov.cell_col = c;
            prov.member_edges = members;
            table.columns.push_back(std::move(col));
            table.provenance.push_back(std::move(prov));
        }
    }

    if (include_edge_features) {
        for (std::size_t e = 0; e < graph.n_edges(); ++e) {
            FeatureColumn col;
            col.name = "edge_" + std::to_string(e);
            col.kind = FeatureKind::numeric;
            col.values.resize(n_scenarios);
            for (std::size_t s = 0; s < n_scenarios; ++s) col.values[s] = scenarios.weights[s][e];
            if (column_is_constant(col)) continue;
            FeatureProvenance prov;
            prov.kind = FeatureProvenance::Kind::edge;
            prov.edge_id = e;
            prov.member_edges = {e};
            table.columns.push_back(std::move(col));
            table.provenance.push_back(std::move(prov));
        }
    }

    if (table.columns.empty()) throw std::runtime_error("no nonconstant features survive the grid filter");
    return table;
}

PathDataset build_path_dataset(const RoadGraph& graph, const ScenarioSet& scenarios,
                               const std::vector<std::size_t>& sampled_ids, const FeatureTable& table) {
    if (sampled_ids.size() < 2) throw std::invalid_argument("need at least two sampled scenarios");
    for (std::size_t id : sampled_ids)
        if (id >= scenarios.n_scenarios()) throw std::out_of_range("sampled scenario id out of range");

    const std::size_t n = sampled_ids.size();
    std::vector<PathSolution> paths;
    paths.reserve(n);
    for (std::size_t id : sampled_ids) paths.push_back(shortest_path(graph, scenarios.weights[id]));

    // Hamming distances between optimal path indicators.
    std::vector<double> matrix(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double d = 0.0;
            for (std::size_t e = 0; e < graph.n_edges(); ++e)
                d += std::abs(static_cast<double>(paths[i].edge_indicator[e]) -
                              static_cast<double>(paths[j].edge_indicator[e]));
            matrix[i * n + j] = d;
            matrix[j * n + i] = d;
        }
    }

    // Sample rows of the feature table; columns constant on the sample are
    // dropped so every remaining feature can discriminate.
    std::vector<FeatureColumn> columns;
    std::vector<std::size_t> source_columns;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        FeatureColumn col;
        col.name = table.columns[c].name;
        col.kind = table.columns[c].kind;
        col.values.reserve(n);
        for (std::size_t id : sampled_ids) col.values.push_back(table.columns[c].values[id]);
        if (col.is_constant()) continue;
        columns.push_back(std::move(col));
        source_columns.push_back(c);
    }
    if (columns.empty()) throw std::runtime_error("all candidate features are constant on the sample");

    PathDataset result{Dataset(std::move(columns), std::move(matrix)), std::move(paths),
                       sampled_ids, std::move(source_columns)};
    return result;
}

} // namespace exfeat::pathlab
