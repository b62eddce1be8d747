#include "exfeat/pathlab/road_graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <queue>
#include <sstream>
#include <tuple>
#include <stdexcept>

#include <json.hpp>

#include "exfeat/rng.hpp"

namespace exfeat::pathlab {

RoadGraph::RoadGraph(std::vector<RoadNode> nodes, std::vector<RoadEdge> edges, std::size_t source,
                     std::size_t target)
    : nodes_(std::move(nodes)), edges_(std::move(edges)), source_(source), target_(target) {
    if (nodes_.size() < 2) throw std::invalid_argument("graph needs at least two nodes");
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        if (nodes_[i].id != i) throw std::invalid_argument("node ids must be dense and ordered");
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        if (edges_[e].id != e) throw std::invalid_argument("edge ids must be dense and ordered");
        if (edges_[e].tail >= nodes_.size() || edges_[e].head >= nodes_.size())
            throw std::invalid_argument("edge endpoint out of range");
    }
    if (source_ >= nodes_.size() || target_ >= nodes_.size())
        throw std::invalid_argument("source or target out of range");
    if (source_ == target_) throw std::invalid_argument("source and target must differ");

    out_offsets_.assign(nodes_.size() + 1, 0);
    for (const RoadEdge& e : edges_) ++out_offsets_[e.tail + 1];
    for (std::size_t i = 1; i <= nodes_.size(); ++i) out_offsets_[i] += out_offsets_[i - 1];
    out_edges_.resize(edges_.size());
    std::vector<std::size_t> cursor(out_offsets_.begin(), out_offsets_.end() - 1);
    for (const RoadEdge& e : edges_) out_edges_[cursor[e.tail]++] = e.id;

    // reachability under positive weights = plain reachability
    std::vector<bool> seen(nodes_.size(), false);
    std::queue<std::size_t> frontier;
    frontier.push(source_);
    seen[source_] = true;
    while (!frontier.empty()) {
        const std::size_t u = frontier.front();
        frontier.pop();
        for (std::size_t eid : out_edges(u)) {
            const std::size_t v = edges_[eid].head;
            if (!seen[v]) {
                seen[v] = true;
                frontier.push(v);
            }
        }
    }
    if (!seen[target_]) throw std::invalid_argument("target is not reachable from source");
}

std::pair<double, double> RoadGraph::edge_midpoint(std::size_t edge_id) const {
    const RoadEdge& e = edges_.at(edge_id);
    return {(nodes_[e.tail].x + nodes_[e.head].x) / 2.0, (nodes_[e.tail].y + nodes_[e.head].y) / 2.0};
}

double path_cost(const PathSolution& path, std::span<const double> weights) {
    double cost = 0.0;
    for (std::size_t eid : path.edge_sequence) cost += weights[eid];
    return cost;
}

namespace {

PathSolution reconstruct(const RoadGraph& graph, const std::vector<std::size_t>& pred_edge,
                         std::span<const double> costs) {
    PathSolution path;
    path.edge_indicator.assign(graph.n_edges(), 0);
    std::size_t node = graph.target();
    while (node != graph.source()) {
        const std::size_t eid = pred_edge[node];
        path.edge_sequence.push_back(eid);
        path.edge_indicator[eid] = 1;
        node = graph.edge(eid).tail;
        if (path.edge_sequence.size() > graph.n_edges())
            throw std::runtime_error("predecessor chain does not form a path");
    }
    std::reverse(path.edge_sequence.begin(), path.edge_sequence.end());
    path.cost = 0.0;
    for (std::size_t eid : path.edge_sequence) path.cost += costs[eid];
    return path;
}

constexpr std::size_t kNoEdge = std::numeric_limits<std::size_t>::max();

} // namespace

PathSolution shortest_path(const RoadGraph& graph, std::span<const double> weights) {
    if (weights.size() != graph.n_edges()) throw std::invalid_argument("weight vector has wrong length");
    for (double w : weights)
        if (!(w > 0.0)) throw std::invalid_argument("edge weights must be strictly positive");

    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(graph.n_nodes(), inf);
    std::vector<std::size_t> pred_edge(graph.n_nodes(), kNoEdge);
    std::vector<bool> done(graph.n_nodes(), false);

    using Entry = std::pair<double, std::size_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    dist[graph.source()] = 0.0;
    heap.emplace(0.0, graph.source());

    while (!heap.empty()) {
        const auto [d, u] = heap.top();
        heap.pop();
        if (done[u]) continue;
        done[u] = true;
        if (u == graph.target()) break;
        for (std::size_t eid : graph.out_edges(u)) {
            const std::size_t v = graph.edge(eid).head;
            if (done[v]) continue;
            const double candidate = d + weights[eid];
            if (candidate < dist[v] || (candidate == dist[v] && eid < pred_edge[v])) {
                dist[v] = candidate;
                pred_edge[v] = eid;
                heap.emplace(candidate, v);
            }
        }
    }
    if (!done[graph.target()] && dist[graph.target()] == inf)
        throw std::runtime_error("target is not reachable from source");
    return reconstruct(graph, pred_edge, weights);
}

PathSolution shortest_path_general(const RoadGraph& graph, std::span<const double> costs) {
    if (costs.size() != graph.n_edges()) throw std::invalid_argument("cost vector has wrong length");

    const double inf = std::numeric_limits<double>::infinity();
    const std::size_t n = graph.n_nodes();
    std::vector<double> dist(n, inf);
    dist[graph.source()] = 0.0;

    // Bellman-Ford label values; one extra round detects negative cycles.
    bool changed = true;
    for (std::size_t round = 0; round < n && changed; ++round) {
        changed = false;
        for (const RoadEdge& e : graph.edges()) {
            if (dist[e.tail] == inf) continue;
            const double candidate = dist[e.tail] + costs[e.id];
            if (candidate < dist[e.head]) {
                dist[e.head] = candidate;
                changed = true;
            }
        }
        if (changed && round == n - 1) {
            double worst = 0.0;
            for (const RoadEdge& e : graph.edges())
                if (dist[e.tail] != inf) worst = std::min(worst, dist[e.tail] + costs[e.id] - dist[e.head]);
            std::ostringstream msg;
            msg << "transformed edge costs contain a negative cycle (relaxation gain " << worst
                << " after " << n << " rounds)";
            throw std::runtime_error(msg.str());
        }
    }
    if (dist[graph.target()] == inf) throw std::runtime_error("target is not reachable from source");

    // Any simple source-target path of tight edges (dist[head] equals
    // dist[tail] + cost) is optimal; a breadth-first sweep over them yields
    // one even when zero-cost cycles make the raw predecessor chain
    // ambiguous. Rounding can stall a relaxation one ulp short of a node's
    // label, so when the exact pass does not reach the target a second pass
    // accepts edges within a tiny relative slack.
    auto tight_sweep = [&](double slack) {
        std::vector<std::size_t> pred_edge(n, kNoEdge);
        std::vector<bool> seen(n, false);
        std::queue<std::size_t> frontier;
        frontier.push(graph.source());
        seen[graph.source()] = true;
        while (!frontier.empty()) {
            const std::size_t u = frontier.front();
            frontier.pop();
            if (dist[u] == inf) continue;
            for (std::size_t eid : graph.out_edges(u)) {
                const std::size_t v = graph.edge(eid).head;
                if (seen[v]) continue;
                const double overshoot = (dist[u] + costs[eid]) - dist[v];
                if (overshoot > slack * (1.0 + std::abs(dist[v]))) continue;
                seen[v] = true;
                pred_edge[v] = eid;
                frontier.push(v);
            }
        }
        return std::pair(static_cast<bool>(seen[graph.target()]), std::move(pred_edge));
    };

    auto [reached, pred_edge] = tight_sweep(0.0);
    if (!reached) std::tie(reached, pred_edge) = tight_sweep(1e-12);
    if (!reached) throw std::runtime_error("failed to extract a tight shortest path");
    return reconstruct(graph, pred_edge, costs);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) {
        // trim whitespace
        const auto begin = field.find_first_not_of(" \t\r");
        const auto end = field.find_last_not_of(" \t\r");
        fields.push_back(begin == std::string::npos ? "" : field.substr(begin, end - begin + 1));
    }
    return fields;
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open csv file: " + path);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        rows.push_back(split_csv_line(line));
    }
    return rows;
}

} // namespace

RoadGraph load_graph_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file: " + path);
    nlohmann::json doc;
    in >> doc;

    std::vector<RoadNode> nodes;
    for (const auto& jn : doc.at("nodes"))
        nodes.push_back({jn.at("id").get<std::size_t>(), jn.at("x").get<double>(), jn.at("y").get<double>()});
    std::vector<RoadEdge> edges;
    for (const auto& je : doc.at("edges"))
        edges.push_back({je.at("id").get<std::size_t>(), je.at("tail").get<std::size_t>(),
                         je.at("head").get<std::size_t>()});
    std::sort(nodes.begin(), nodes.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    std::sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    return RoadGraph(std::move(nodes), std::move(edges), doc.at("source").get<std::size_t>(),
                     doc.at("target").get<std::size_t>());
}

RoadGraph load_graph_csv(const std::string& nodes_csv, const std::string& edges_csv, std::size_t source,
                         std::size_t target) {
    std::vector<RoadNode> nodes;
    for (const auto& row : read_csv(nodes_csv)) {
        if (row.size() < 3) throw std::runtime_error("node rows need id,x,y");
        if (row[0] == "id") continue; // header
        nodes.push_back({std::stoull(row[0]), std::stod(row[1]), std::stod(row[2])});
    }
    std::vector<RoadEdge> edges;
    for (const auto& row : read_csv(edges_csv)) {
        if (row.size() < 3) throw std::runtime_error("edge rows need id,tail,head");
        if (row[0] == "id") continue;
        edges.push_back({std::stoull(row[0]), std::stoull(row[1]), std::stoull(row[2])});
    }
    std::sort(nodes.begin(), nodes.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    std::sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    return RoadGraph(std::move(nodes), std::move(edges), source, target);
}

ScenarioSet load_scenarios_csv(const std::string& path, bool invert) {
    const auto rows = read_csv(path);
    if (rows.size() < 2) throw std::runtime_error("scenario file needs a header and at least one row");

    // header carries edge ids, either bare or as edge_<id>
    std::vector<std::size_t> edge_ids;
    for (const std::string& h : rows[0]) {
        std::string token = h;
        if (token.rfind("edge_", 0) == 0) token = token.substr(5);
        edge_ids.push_back(std::stoull(token));
    }
    const std::size_t n_edges = edge_ids.size();

    ScenarioSet scenarios;
    scenarios.n_edges = n_edges;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].size() != n_edges)
            throw std::runtime_error("scenario row " + std::to_string(r) + " has wrong width");
        std::vector<double> weights(n_edges);
        for (std::size_t c = 0; c < n_edges; ++c) {
            const std::size_t eid = edge_ids[c];
            if (eid >= n_edges) throw std::runtime_error("scenario header references unknown edge id");
            double w = std::stod(rows[r][c]);
            if (invert) w = 1.0 / w;
            if (!(w > 0.0)) throw std::runtime_error("scenario weights must be strictly positive");
            weights[eid] = w;
        }
        scenarios.weights.push_back(std::move(weights));
    }
    return scenarios;
}

void save_graph_json(const RoadGraph& graph, const std::string& path) {
    nlohmann::ordered_json doc;
    doc["nodes"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < graph.n_nodes(); ++i) {
        const RoadNode& n = graph.node(i);
        doc["nodes"].push_back({{"id", n.id}, {"x", n.x}, {"y", n.y}});
    }
    doc["edges"] = nlohmann::ordered_json::array();
    for (const RoadEdge& e : graph.edges())
        doc["edges"].push_back({{"id", e.id}, {"tail", e.tail}, {"head", e.head}});
    doc["source"] = graph.source();
    doc["target"] = graph.target();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write graph file: " + path);
    out << doc.dump(2) << '\n';
}

void save_scenarios_csv(const ScenarioSet& scenarios, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write scenario file: " + path);
    for (std::size_t e = 0; e < scenarios.n_edges; ++e) out << (e ? "," : "") << "edge_" << e;
    out << '\n';
    char buf[40];
    for (const auto& row : scenarios.weights) {
        for (std::size_t e = 0; e < row.size(); ++e) {
            std::snprintf(buf, sizeof(buf), "%.17g", row[e]);
            out << (e ? "," : "") << buf;
        }
        out << '\n';
    }
}

SyntheticRoad make_synthetic_road(const SyntheticRoadSpec& spec) {
    if (spec.grid_rows < 2 || spec.grid_cols < 2)
        throw std::invalid_argument("synthetic road lattice needs at least 2x2 nodes");
    if (spec.n_scenarios == 0) throw std::invalid_argument("need at least one scenario");

    Rng rng(derive_seed(spec.seed, 0x70ad));
    const std::size_t rows = spec.grid_rows, cols = spec.grid_cols;

    std::vector<RoadNode> nodes;
    nodes.reserve(rows * cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            nodes.push_back({nodes.size(), static_cast<double>(c) + rng.uniform_double(-0.25, 0.25),
                             static_cast<double>(r) + rng.uniform_double(-0.25, 0.25)});

    auto node_at = [cols](std::size_t r, std::size_t c) { return r * cols + c; };
    std::vector<RoadEdge> edges;
    auto add_pair = [&edges](std::size_t a, std::size_t b) {
        edges.push_back({edges.size(), a, b});
        edges.push_back({edges.size(), b, a});
    };
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            if (c + 1 < cols) add_pair(node_at(r, c), node_at(r, c + 1));
            if (r + 1 < rows) add_pair(node_at(r, c), node_at(r + 1, c));
        }

    RoadGraph graph(std::move(nodes), std::move(edges), node_at(0, 0), node_at(rows - 1, cols - 1));

    // Scenario weights: per-edge base level times a lognormal factor of the
    // congestion zone holding the edge midpoint, times small edge noise.
    const std::size_t zones = std::max<std::size_t>(1, spec.congestion_zones);
    std::vector<double> base(graph.n_edges());
    for (auto& b : base) b = rng.uniform_double(1.0, 2.0);
    std::vector<std::size_t> zone_of(graph.n_edges());
    for (std::size_t e = 0; e < graph.n_edges(); ++e) {
        const auto [mx, my] = graph.edge_midpoint(e);
        const auto zx = std::min<std::size_t>(
            zones - 1, static_cast<std::size_t>(std::max(0.0, mx / static_cast<double>(cols) * zones)));
        const auto zy = std::min<std::size_t>(
            zones - 1, static_cast<std::size_t>(std::max(0.0, my / static_cast<double>(rows) * zones)));
        zone_of[e] = zy * zones + zx;
    }

    ScenarioSet scenarios;
    scenarios.n_edges = graph.n_edges();
    scenarios.weights.reserve(spec.n_scenarios);
    for (std::size_t s = 0; s < spec.n_scenarios; ++s) {
        std::vector<double> factor(zones * zones);
        for (auto& f : factor) f = std::exp(spec.zone_sigma * rng.normal());
        std::vector<double> w(graph.n_edges());
        for (std::size_t e = 0; e < graph.n_edges(); ++e)
            w[e] = base[e] * factor[zone_of[e]] * std::exp(spec.noise_sigma * rng.normal());
        scenarios.weights.push_back(std::move(w));
    }
    return SyntheticRoad{std::move(graph), std::move(scenarios)};
}

} // namespace exfeat::pathlab
