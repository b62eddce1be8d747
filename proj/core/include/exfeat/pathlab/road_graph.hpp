#ifndef EXFEAT_PATHLAB_ROAD_GRAPH_HPP
#define EXFEAT_PATHLAB_ROAD_GRAPH_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace exfeat::pathlab {

struct RoadNode {
    std::size_t id = 0;
    double x = 0.0, y = 0.0;
};

struct RoadEdge {
    std::size_t id = 0;
    std::size_t tail = 0, head = 0;
};

/// Directed road network with one fixed source/target pair. Construction
/// checks that edge endpoints exist, ids are dense (0..count-1), the source
/// differs from the target, and the target is reachable.
class RoadGraph {
public:
    RoadGraph(std::vector<RoadNode> nodes, std::vector<RoadEdge> edges, std::size_t source,
              std::size_t target);

    std::size_t n_nodes() const { return nodes_.size(); }
    std::size_t n_edges() const { return edges_.size(); }
    const RoadNode& node(std::size_t id) const { return nodes_.at(id); }
    const RoadEdge& edge(std::size_t id) const { return edges_.at(id); }
    const std::vector<RoadEdge>& edges() const { return edges_; }
    std::size_t source() const { return source_; }
    std::size_t target() const { return target_; }

    /// Outgoing edge ids of a node.
    std::span<const std::size_t> out_edges(std::size_t node) const {
        return {out_edges_.data() + out_offsets_[node], out_offsets_[node + 1] - out_offsets_[node]};
    }

    std::pair<double, double> edge_midpoint(std::size_t edge_id) const;

private:
    std::vector<RoadNode> nodes_;
    std::vector<RoadEdge> edges_;
    std::size_t source_ = 0, target_ = 0;
    std::vector<std::size_t> out_offsets_, out_edges_;
};

/// Per-scenario edge weights, rows = scenarios, columns = edges, all > 0.
struct ScenarioSet {
    std::size_t n_edges = 0;
    std::vector<std::vector<double>> weights;

    std::size_t n_scenarios() const { return weights.size(); }
};

/// Source-target path as an edge indicator vector plus its cost under the
/// weight vector it was computed with.
struct PathSolution {
    std::vector<std::uint8_t> edge_indicator;
    std::vector<std::size_t> edge_sequence; // source to target order
    double cost = 0.0;
};

double path_cost(const PathSolution& path, std::span<const double> weights);

/// Minimum-cost source-target path under strictly positive weights
/// (label-setting search; equal-cost ties resolved towards the smaller
/// predecessor edge id). Throws if the target is unreachable.
PathSolution shortest_path(const RoadGraph& graph, std::span<const double> weights);

/// Minimum-cost source-target path for arbitrary (possibly negative) edge
/// costs via label correction. Throws on a negative cycle, naming the cycle
/// cost in the diagnostic.
PathSolution shortest_path_general(const RoadGraph& graph, std::span<const double> costs);

// File ingestion. Graph files are JSON
//   {"nodes": [{"id","x","y"},...], "edges": [{"id","tail","head"},...],
//    "source": s, "target": t}
// or a pair of CSV files nodes(id,x,y) / edges(id,tail,head) with the
// source/target pair supplied separately. Scenario files are CSV matrices
// whose header names edge ids (edge_<id> or plain ids) and whose rows are
// positive weights; `invert` turns velocities into reciprocal travel times.
RoadGraph load_graph_json(const std::string& path);
RoadGraph load_graph_csv(const std::string& nodes_csv, const std::string& edges_csv,
                         std::size_t source, std::size_t target);
ScenarioSet load_scenarios_csv(const std::string& path, bool invert = false);
void save_graph_json(const RoadGraph& graph, const std::string& path);
void save_scenarios_csv(const ScenarioSet& scenarios, const std::string& path);

struct SyntheticRoadSpec {
    std::size_t grid_rows = 8, grid_cols = 8;
    std::size_t n_scenarios = 500;
    std::size_t congestion_zones = 3; // zones per axis for scenario factors
    double zone_sigma = 0.5;          // lognormal sigma of zone factors
    double noise_sigma = 0.1;         // lognormal sigma of per-edge noise
    std::uint64_t seed = 0;
};

struct SyntheticRoad {
    RoadGraph graph;
    ScenarioSet scenarios;
};

/// Lattice road network with jittered coordinates and region-correlated
/// lognormal scenario weights; source and target are opposite corners.
/// Deterministic per seed.
SyntheticRoad make_synthetic_road(const SyntheticRoadSpec& spec);

} // namespace exfeat::pathlab

#endif
