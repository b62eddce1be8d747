#ifndef EXFEAT_PATHLAB_EXPERIMENT_HPP
#define EXFEAT_PATHLAB_EXPERIMENT_HPP

#include <string>
#include <vector>

#include "exfeat/pathlab/explain.hpp"
#include "exfeat/pathlab/grid_features.hpp"
#include "exfeat/pathlab/road_graph.hpp"
#include "exfeat/solvers.hpp"

namespace exfeat::pathlab {

/// Where the road network and its scenarios come from: either generated on
/// the fly or read from files (paths resolved against a data directory).
struct DataSourceSpec {
    enum class Type { synthetic, files } type = Type::synthetic;
    SyntheticRoadSpec synthetic;
    std::string graph_json;                  // files: JSON graph, or ...
    std::string nodes_csv, edges_csv;        // ... node/edge CSV pair
    std::size_t source = 0, target = 0;      // used with the CSV pair
    std::string scenarios_csv;
    bool invert_weights = false;             // velocities -> travel times
};

struct ExperimentConfig {
    std::size_t n_train = 200;
    std::size_t n_eval = 50;
    std::size_t k = 5;
    std::vector<std::size_t> selection_sizes = {1, 2, 4, 8};
    GridSpec grid;
    bool include_edge_features = true;
    std::size_t repeats = 10;
    std::size_t random_baseline_repeats = 100; // objective statistics draws
    std::size_t random_path_repeats = 10;      // random selections walked on eval scenarios
    std::uint64_t seed = 0;
    NeighborWeighting weighting = NeighborWeighting::exp_weighted;
    double tie_tolerance = 1e-9;
    KOptConfig kopt;       // selection_size/seed are set per run
    std::size_t threads = 0; // 0 = hardware concurrency
    DataSourceSpec data;
};

ExperimentConfig parse_experiment_config(const std::string& json_text);
std::string experiment_config_to_json(const ExperimentConfig& config);

struct RoadInstanceData {
    RoadGraph graph;
    ScenarioSet scenarios;
};

/// Materializes the configured data source; file paths are resolved against
/// `data_dir` when nonempty.
RoadInstanceData load_experiment_data(const ExperimentConfig& config, const std::string& data_dir);

struct ExperimentRow {
    std::size_t repeat = 0;
    std::size_t selection_size = 0;
    std::string method; // selected | all_edges | random
    double mean_relative_length = 0.0;
    double objective = 0.0;
};

struct ExperimentResult {
    std::vector<ExperimentRow> rows;
    std::string csv;          // long-format rows, deterministic bytes
    std::string summary_json; // config echo, seeds, aggregates
};

/// Full protocol: per repeat, disjoint train/eval scenarios are sampled, the
/// candidate features are built on the training sample, the swap search
/// selects L features under pessimistic evaluation, and every method is
/// scored by the mean relative length of its most explainable paths on the
/// held-out scenarios. Methods: the selected features, all individual edge
/// weights, and random size-L selections. Repeats run on a small thread
/// pool; outputs are byte-identical for a fixed seed regardless of pool
/// size.
ExperimentResult run_experiment(const ExperimentConfig& config, const RoadInstanceData& data);

} // namespace exfeat::pathlab

#endif
