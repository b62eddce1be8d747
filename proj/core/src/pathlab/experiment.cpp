#include "exfeat/pathlab/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "exfeat/evaluate.hpp"
#include "exfeat/rng.hpp"

namespace exfeat::pathlab {

namespace {

using json = nlohmann::ordered_json;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

ExperimentConfig parse_experiment_config(const std::string& json_text) {
    const json doc = json::parse(json_text);
    ExperimentConfig config;
    config.n_train = doc.value("n_train", config.n_train);
    config.n_eval = doc.value("n_eval", config.n_eval);
    config.k = doc.value("k", config.k);
    if (doc.contains("L_values")) config.selection_sizes = doc["L_values"].get<std::vector<std::size_t>>();
    if (doc.contains("grid")) {
        config.grid.rows = doc["grid"].value("rows", config.grid.rows);
        config.grid.cols = doc["grid"].value("cols", config.grid.cols);
        if (doc["grid"].contains("bounding_box")) {
            const auto& jb = doc["grid"]["bounding_box"];
            config.grid.bounding_box =
                BoundingBox{jb.at("min_x").get<double>(), jb.at("min_y").get<double>(),
                            jb.at("max_x").get<double>(), jb.at("max_y").get<double>()};
        }
    }
    config.include_edge_features = doc.value("include_edge_features", config.include_edge_features);
    config.repeats = doc.value("repeats", config.repeats);
    config.random_baseline_repeats = doc.value("random_baseline_repeats", config.random_baseline_repeats);
    config.random_path_repeats = doc.value("random_path_repeats", config.random_path_repeats);
    config.seed = doc.value("seed", config.seed);
    if (doc.contains("weighting")) {
        const std::string w = doc["weighting"].get<std::string>();
        if (w == "uniform")
            config.weighting = NeighborWeighting::uniform;
        else if (w == "exp_weighted")
            config.weighting = NeighborWeighting::exp_weighted;
        else
            throw std::invalid_argument("unknown weighting: " + w);
    }
    config.tie_tolerance = doc.value("tie_tolerance", config.tie_tolerance);
    if (doc.contains("kopt")) {
        const auto& jk = doc["kopt"];
        config.kopt.swap_size = jk.value("swap_size", config.kopt.swap_size);
        config.kopt.max_sampled_moves = jk.value("max_sampled_moves", config.kopt.max_sampled_moves);
        config.kopt.improving_moves_cutoff =
            jk.value("improving_moves_cutoff", config.kopt.improving_moves_cutoff);
        config.kopt.start_candidates = jk.value("start_candidates", config.kopt.start_candidates);
        config.kopt.restarts = jk.value("restarts", config.kopt.restarts);
    }
    config.threads = doc.value("threads", config.threads);
    if (doc.contains("data")) {
        const auto& jd = doc["data"];
        const std::string type = jd.value("type", "synthetic");
        if (type == "synthetic") {
            config.data.type = DataSourceSpec::Type::synthetic;
            config.data.synthetic.grid_rows = jd.value("rows", config.data.synthetic.grid_rows);
            config.data.synthetic.grid_cols = jd.value("cols", config.data.synthetic.grid_cols);
            config.data.synthetic.n_scenarios = jd.value("n_scenarios", config.data.synthetic.n_scenarios);
            config.data.synthetic.congestion_zones = jd.value("zones", config.data.synthetic.congestion_zones);
            config.data.synthetic.zone_sigma = jd.value("zone_sigma", config.data.synthetic.zone_sigma);
            config.data.synthetic.noise_sigma = jd.value("noise_sigma", config.data.synthetic.noise_sigma);
            config.data.synthetic.seed = jd.value("seed", config.seed);
        } else if (type == "files") {
            config.data.type = DataSourceSpec::Type::files;
            config.data.graph_json = jd.value("graph", "");
            config.data.nodes_csv = jd.value("nodes", "");
            config.data.edges_csv = jd.value("edges", "");
            config.data.source = jd.value("source", std::size_t{0});
            config.data.target = jd.value("target", std::size_t{0});
            config.data.scenarios_csv = jd.value("scenarios", "");
            config.data.invert_weights = jd.value("invert_weights", false);
        } else {
            throw std::invalid_argument("unknown data source type: " + type);
        }
    } else {
        config.data.synthetic.seed = config.seed;
    }
    return config;
}

std::string experiment_config_to_json(const ExperimentConfig& config) {
    json doc;
    doc["n_train"] = config.n_train;
    doc["n_eval"] = config.n_eval;
    doc["k"] = config.k;
    doc["L_values"] = config.selection_sizes;
    doc["grid"] = {{"rows", config.grid.rows}, {"cols", config.grid.cols}};
    if (config.grid.bounding_box) {
        doc["grid"]["bounding_box"] = {{"min_x", config.grid.bounding_box->min_x},
                                       {"min_y", config.grid.bounding_box->min_y},
                                       {"max_x", config.grid.bounding_box->max_x},
                                       {"max_y", config.grid.bounding_box->max_y}};
    }
    doc["include_edge_features"] = config.include_edge_features;
    doc["repeats"] = config.repeats;
    doc["random_baseline_repeats"] = config.random_baseline_repeats;
    doc["random_path_repeats"] = config.random_path_repeats;
    doc["seed"] = config.seed;
    doc["weighting"] = config.weighting == NeighborWeighting::uniform ? "uniform" : "exp_weighted";
    doc["tie_tolerance"] = config.tie_tolerance;
    doc["kopt"] = {{"swap_size", config.kopt.swap_size},
                   {"max_sampled_moves", config.kopt.max_sampled_moves},
                   {"improving_moves_cutoff", config.kopt.improving_moves_cutoff},
                   {"start_candidates", config.kopt.start_candidates},
                   {"restarts", config.kopt.restarts}};
    doc["threads"] = config.threads;
    if (config.data.type == DataSourceSpec::Type::synthetic) {
        doc["data"] = {{"type", "synthetic"},
                       {"rows", config.data.synthetic.grid_rows},
                       {"cols", config.data.synthetic.grid_cols},
                       {"n_scenarios", config.data.synthetic.n_scenarios},
                       {"zones", config.data.synthetic.congestion_zones},
                       {"zone_sigma", config.data.synthetic.zone_sigma},
                       {"noise_sigma", config.data.synthetic.noise_sigma},
                       {"seed", config.data.synthetic.seed}};
    } else {
        doc["data"] = {{"type", "files"},
                       {"graph", config.data.graph_json},
                       {"nodes", config.data.nodes_csv},
                       {"edges", config.data.edges_csv},
                       {"source", config.data.source},
                       {"target", config.data.target},
                       {"scenarios", config.data.scenarios_csv},
                       {"invert_weights", config.data.invert_weights}};
    }
    return doc.dump(2);
}

RoadInstanceData load_experiment_data(const ExperimentConfig& config, const std::string& data_dir) {
    if (config.data.type == DataSourceSpec::Type::synthetic) {
        SyntheticRoad road = make_synthetic_road(config.data.synthetic);
        return {std::move(road.graph), std::move(road.scenarios)};
    }
    auto resolve = [&data_dir](const std::string& path) {
        if (path.empty() || data_dir.empty() || path.front() == '/') return path;
        return data_dir + "/" + path;
    };
    if (!config.data.graph_json.empty()) {
        RoadGraph graph = load_graph_json(resolve(config.data.graph_json));
        ScenarioSet scenarios =
            load_scenarios_csv(resolve(config.data.scenarios_csv), config.data.invert_weights);
        return {std::move(graph), std::move(scenarios)};
    }
    RoadGraph graph = load_graph_csv(resolve(config.data.nodes_csv), resolve(config.data.edges_csv),
                                     config.data.source, config.data.target);
    ScenarioSet scenarios =
        load_scenarios_csv(resolve(config.data.scenarios_csv), config.data.invert_weights);
    return {std::move(graph), std::move(scenarios)};
}

namespace {

struct RepeatOutput {
    std::vector<ExperimentRow> rows;
    std::vector<std::pair<std::size_t, std::vector<std::string>>> selected_features; // per L
};

struct MethodEval {
    double mean_relative_length = 0.0;
    double objective = 0.0;
};

// Mean relative length of the most explainable paths for one selection on
// all held-out scenarios. Optimal costs per scenario are precomputed.
double mean_relative_length_for(const RoadGraph& graph, const PathDataset& history,
                                const FeatureSelection& selection, const FeatureTable& table,
                                const std::vector<std::size_t>& eval_ids,
                                const std::vector<double>& optimal_cost, const ScenarioSet& scenarios,
                                std::size_t k, NeighborWeighting weighting) {
    double total = 0.0;
    std::vector<double> query(history.data.n_features());
    for (std::size_t t = 0; t < eval_ids.size(); ++t) {
        const std::size_t id = eval_ids[t];
        for (std::size_t c = 0; c < history.source_columns.size(); ++c)
            query[c] = table.columns[history.source_columns[c]].values[id];
        const ExplainablePath explained = most_explainable_path(
            graph, history, selection, query, scenarios.weights[id], k, weighting);
        total += explained.path.cost / optimal_cost[t];
    }
    return total / static_cast<double>(eval_ids.size());
}

RepeatOutput run_repeat(const ExperimentConfig& config, const RoadInstanceData& data,
                        const FeatureTable& candidate_table, const FeatureTable& edge_table,
                        std::size_t repeat) {
    const RoadGraph& graph = data.graph;
    const ScenarioSet& scenarios = data.scenarios;

    Rng rng(derive_seed(config.seed, 0xe0 + repeat));
    std::vector<std::size_t> sampled =
        rng.sample_without_replacement(scenarios.n_scenarios(), config.n_train + config.n_eval);
    rng.shuffle(sampled);
    const std::vector<std::size_t> train_ids(sampled.begin(), sampled.begin() + config.n_train);
    const std::vector<std::size_t> eval_ids(sampled.begin() + config.n_train, sampled.end());

    const PathDataset train = build_path_dataset(graph, scenarios, train_ids, candidate_table);
    const PathDataset train_edges = build_path_dataset(graph, scenarios, train_ids, edge_table);

    std::vector<double> optimal_cost(eval_ids.size());
    for (std::size_t t = 0; t < eval_ids.size(); ++t)
        optimal_cost[t] = shortest_path(graph, scenarios.weights[eval_ids[t]]).cost;

    const EvalConfig eval_config{config.k, TieMode::pessimistic, config.tie_tolerance};
    const std::size_t p = train.data.n_features();

    RepeatOutput out;

    // all-edge baseline is independent of L; computed once
    std::vector<std::size_t> all_edge_idx(train_edges.data.n_features());
    for (std::size_t f = 0; f < all_edge_idx.size(); ++f) all_edge_idx[f] = f;
    const FeatureSelection all_edges_sel(all_edge_idx);
    MethodEval all_edges;
    all_edges.objective = evaluate_selection(train_edges.data, all_edges_sel, eval_config).objective;
    all_edges.mean_relative_length =
        mean_relative_length_for(graph, train_edges, all_edges_sel, edge_table, eval_ids, optimal_cost,
                                 scenarios, config.k, config.weighting);

    for (std::size_t L : config.selection_sizes) {
        const std::size_t size = std::min(L, p); // sample may have dropped columns

        // swap-search selection
        FeatureSelection selected;
        double selected_objective = 0.0;
        if (size >= p) {
            std::vector<std::size_t> all(p);
            for (std::size_t f = 0; f < p; ++f) all[f] = f;
            selected = FeatureSelection(std::move(all));
            selected_objective = evaluate_selection(train.data, selected, eval_config).objective;
        } else {
            KOptConfig kopt = config.kopt;
            kopt.selection_size = size;
            kopt.swap_size = std::min(kopt.swap_size, std::min(size, p - size));
            kopt.seed = derive_seed(config.seed, 0x5e1ec7 + repeat * 1000 + L);
            const SearchResult search = k_opt_search(train.data, kopt, eval_config);
            selected = search.best_selection;
            selected_objective = search.best_objective;
        }
        MethodEval selected_eval;
        selected_eval.objective = selected_objective;
        selected_eval.mean_relative_length =
            mean_relative_length_for(graph, train, selected, candidate_table, eval_ids, optimal_cost,
                                     scenarios, config.k, config.weighting);

        // random selections: objective statistics plus path quality of a few draws
        const std::uint64_t random_seed = derive_seed(config.seed, 0xa4d0 + repeat * 1000 + L);
        const ObjectiveStats stats = random_selection_baseline(train.data, size,
                                                               config.random_baseline_repeats,
                                                               eval_config, random_seed);
        Rng path_rng(derive_seed(random_seed, 1));
        double random_rel = 0.0;
        for (std::size_t d = 0; d < config.random_path_repeats; ++d) {
            const FeatureSelection draw(path_rng.sample_without_replacement(p, size));
            random_rel += mean_relative_length_for(graph, train, draw, candidate_table, eval_ids,
                                                   optimal_cost, scenarios, config.k, config.weighting);
        }
        random_rel /= static_cast<double>(config.random_path_repeats);

        out.rows.push_back({repeat, L, "selected", selected_eval.mean_relative_length,
                            selected_eval.objective});
        out.rows.push_back({repeat, L, "all_edges", all_edges.mean_relative_length, all_edges.objective});
        out.rows.push_back({repeat, L, "random", random_rel, stats.mean});

        std::vector<std::string> names;
        for (std::size_t f : selected.indices) names.push_back(train.data.feature(f).name);
        out.selected_features.emplace_back(L, std::move(names));
    }
    return out;
}

} // namespace

ExperimentResult run_experiment(const ExperimentConfig& config, const RoadInstanceData& data) {
    if (config.repeats == 0) throw std::invalid_argument("need at least one repeat");
    if (config.n_train < 2 || config.n_eval == 0)
        throw std::invalid_argument("need at least two training and one evaluation scenario");
    if (config.n_train + config.n_eval > data.scenarios.n_scenarios())
        throw std::invalid_argument("not enough scenarios for the requested train/eval split");
    if (config.k >= config.n_train)
        throw std::invalid_argument("neighborhood size k must be smaller than n_train");
    if (config.selection_sizes.empty()) throw std::invalid_argument("no selection sizes configured");

    const FeatureTable candidate_table =
        build_grid_features(data.graph, data.scenarios, config.grid, config.include_edge_features);
    const GridSpec single_cell{1, 1, std::nullopt};
    const FeatureTable edge_table = [&] {
        // edges only: a one-cell grid whose lone aggregate column is ignored
        FeatureTable table = build_grid_features(data.graph, data.scenarios, single_cell, true);
        FeatureTable edges_only;
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            if (table.provenance[c].kind != FeatureProvenance::Kind::edge) continue;
            edges_only.columns.push_back(table.columns[c]);
            edges_only.provenance.push_back(table.provenance[c]);
        }
        if (edges_only.columns.empty()) throw std::runtime_error("no nonconstant edge features");
        return edges_only;
    }();

    std::vector<RepeatOutput> outputs(config.repeats);
    const std::size_t workers = std::max<std::size_t>(
        1, std::min<std::size_t>(config.repeats, config.threads > 0
                                                     ? config.threads
                                                     : std::thread::hardware_concurrency()));
    for (std::size_t begin = 0; begin < config.repeats; begin += workers) {
        const std::size_t end = std::min(config.repeats, begin + workers);
        std::vector<std::future<RepeatOutput>> batch;
        for (std::size_t r = begin; r < end; ++r)
            batch.push_back(std::async(std::launch::async, [&, r] {
                return run_repeat(config, data, candidate_table, edge_table, r);
            }));
        for (std::size_t r = begin; r < end; ++r) outputs[r] = batch[r - begin].get();
    }

    ExperimentResult result;
    std::ostringstream csv;
    csv << "repeat,L,method,mean_relative_length,objective\n";
    for (const RepeatOutput& out : outputs)
        for (const ExperimentRow& row : out.rows) {
            result.rows.push_back(row);
            csv << row.repeat << ',' << row.selection_size << ',' << row.method << ','
                << format_double(row.mean_relative_length) << ',' << format_double(row.objective)
                << '\n';
        }
    result.csv = csv.str();

    // aggregate over repeats per (L, method)
    std::map<std::pair<std::size_t, std::string>, std::pair<double, double>> sums;
    for (const ExperimentRow& row : result.rows) {
        auto& bucket = sums[{row.selection_size, row.method}];
        bucket.first += row.mean_relative_length;
        bucket.second += row.objective;
    }

    json summary;
    summary["config"] = json::parse(experiment_config_to_json(config));
    summary["n_candidate_features"] = candidate_table.columns.size();
    summary["n_edge_features"] = edge_table.columns.size();
    json aggregates = json::array();
    for (std::size_t L : config.selection_sizes) {
        for (const char* method : {"selected", "all_edges", "random"}) {
            const auto& bucket = sums.at({L, method});
            aggregates.push_back({{"L", L},
                                  {"method", method},
                                  {"mean_relative_length", bucket.first / config.repeats},
                                  {"mean_objective", bucket.second / config.repeats}});
        }
    }
    summary["aggregates"] = std::move(aggregates);
    json selected_log = json::array();
    for (std::size_t r = 0; r < outputs.size(); ++r)
        for (const auto& [L, names] : outputs[r].selected_features)
            selected_log.push_back({{"repeat", r}, {"L", L}, {"features", names}});
    summary["selected_features"] = std::move(selected_log);
    result.summary_json = summary.dump(2) + "\n";
    return result;
}

} // namespace exfeat::pathlab
