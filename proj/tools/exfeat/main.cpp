#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "exfeat/dataset_io.hpp"
#include "exfeat/evaluate.hpp"
#include "exfeat/hardness.hpp"
#include "exfeat/lp_format.hpp"
#include "exfeat/manifest.hpp"
#include "exfeat/mip.hpp"
#include "exfeat/pathlab/experiment.hpp"
#include "exfeat/solvers.hpp"
#include "exfeat/synthetic.hpp"

using json = nlohmann::ordered_json;
using namespace exfeat;

namespace {

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::vector<std::size_t> parse_index_list(const std::string& text) {
    std::vector<std::size_t> indices;
    std::stringstream in(text);
    std::string token;
    while (std::getline(in, token, ',')) {
        if (token.empty()) continue;
        indices.push_back(std::stoull(token));
    }
    if (indices.empty()) throw std::invalid_argument("empty index list: " + text);
    return indices;
}

TieMode parse_mode(const std::string& mode) {
    if (mode == "optimistic" || mode == "opt") return TieMode::optimistic;
    if (mode == "pessimistic" || mode == "pess") return TieMode::pessimistic;
    throw std::invalid_argument("unknown mode: " + mode + " (use optimistic|pessimistic)");
}

const char* mode_name(TieMode mode) {
    return mode == TieMode::optimistic ? "optimistic" : "pessimistic";
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write output file: " + path);
    out << content;
}

// shared per-command state wired to CLI11 flags
struct CommonFlags {
    std::uint64_t seed = 0;
    double tolerance = 1e-9;
    std::string output;
    bool json_output = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--seed", seed, "Random seed");
        cmd->add_option("--tol", tolerance, "Tie-breaking tolerance");
        cmd->add_option("--output,-o", output, "Output file (a .manifest.json is written next to it)");
        cmd->add_flag("--json", json_output, "Emit machine-readable JSON on stdout");
    }
};

// prints either JSON or the given text; with --output the JSON result is
// written to the file, referencing its manifest
void emit_result(const CommonFlags& flags, cli::RunManifest& manifest, json result,
                 const std::string& text) {
    if (!flags.output.empty()) {
        const std::string manifest_path = manifest.write(flags.output);
        result["manifest"] = manifest_path;
        write_text_file(flags.output, result.dump(2) + "\n");
    }
    if (flags.json_output)
        std::cout << result.dump(2) << '\n';
    else
        std::cout << text;
}

json selection_to_json(const FeatureSelection& selection, const Dataset& dataset) {
    json names = json::array();
    for (std::size_t f : selection.indices) names.push_back(dataset.feature(f).name);
    return json{{"indices", selection.indices}, {"names", names}};
}

int cmd_evaluate(const CommonFlags& flags, cli::RunManifest& manifest, const std::string& dataset_path,
                 const std::string& select, std::size_t k, const std::string& mode, bool normalize) {
    manifest.add_input(dataset_path);
    const Dataset dataset = load_dataset_json(dataset_path, normalize);
    const FeatureSelection selection(parse_index_list(select));
    const EvalConfig config{k, parse_mode(mode), flags.tolerance};
    manifest.set_config({{"dataset", dataset_path},
                         {"selection", selection.indices},
                         {"k", k},
                         {"mode", mode_name(config.mode)},
                         {"tol", flags.tolerance},
                         {"normalize", normalize}});

    const EvalResult result = evaluate_selection(dataset, selection, config);

    json doc;
    doc["objective"] = result.objective;
    doc["selection"] = selection_to_json(selection, dataset);
    doc["mode"] = mode_name(config.mode);
    doc["k"] = k;
    json per_point = json::array();
    for (std::size_t i = 0; i < result.per_point.size(); ++i)
        per_point.push_back({{"point", i},
                             {"contribution", result.per_point[i].contribution},
                             {"neighbors", result.per_point[i].neighbors}});
    doc["per_point"] = std::move(per_point);

    std::ostringstream text;
    text << "objective: " << format_value(result.objective) << '\n';
    for (std::size_t i = 0; i < result.per_point.size(); ++i) {
        text << "  point " << i << ": contribution " << format_value(result.per_point[i].contribution)
             << ", neighbors";
        for (std::size_t j : result.per_point[i].neighbors) text << ' ' << j;
        text << '\n';
    }
    emit_result(flags, manifest, std::move(doc), text.str());
    return 0;
}

json search_result_to_json(const SearchResult& result, const Dataset& dataset) {
    json doc;
    doc["selection"] = selection_to_json(result.best_selection, dataset);
    doc["objective"] = result.best_objective;
    doc["evaluations"] = result.evaluations;
    json trace = json::array();
    for (const SearchTracePoint& point : result.trace)
        trace.push_back(
            {{"restart", point.restart}, {"iteration", point.iteration}, {"objective", point.objective}});
    doc["trace"] = std::move(trace);
    return doc;
}

std::string search_result_text(const SearchResult& result) {
    std::ostringstream text;
    text << "selection: " << result.best_selection.to_string() << '\n'
         << "objective: " << format_value(result.best_objective) << '\n'
         << "evaluations: " << result.evaluations << '\n';
    return text.str();
}

int cmd_select(const CommonFlags& flags, cli::RunManifest& manifest, const std::string& dataset_path,
               const KOptConfig& base_config, std::size_t k, const std::string& mode, bool normalize) {
    manifest.add_input(dataset_path);
    const Dataset dataset = load_dataset_json(dataset_path, normalize);
    KOptConfig config = base_config;
    config.seed = flags.seed;
    const EvalConfig eval_config{k, parse_mode(mode), flags.tolerance};
    manifest.set_config({{"dataset", dataset_path},
                         {"L", config.selection_size},
                         {"K", config.swap_size},
                         {"max_sampled_moves", config.max_sampled_moves},
                         {"improving_moves_cutoff", config.improving_moves_cutoff},
                         {"start_candidates", config.start_candidates},
                         {"restarts", config.restarts},
                         {"k", k},
                         {"mode", mode_name(eval_config.mode)},
                         {"seed", flags.seed},
                         {"tol", flags.tolerance}});

    const SearchResult result = k_opt_search(dataset, config, eval_config);
    emit_result(flags, manifest, search_result_to_json(result, dataset), search_result_text(result));
    return 0;
}

int cmd_exact(const CommonFlags& flags, cli::RunManifest& manifest, const std::string& dataset_path,
              std::size_t max_size, std::size_t k, const std::string& mode, std::uint64_t budget,
              bool normalize) {
    manifest.add_input(dataset_path);
    const Dataset dataset = load_dataset_json(dataset_path, normalize);
    const EvalConfig eval_config{k, parse_mode(mode), flags.tolerance};
    manifest.set_config({{"dataset", dataset_path},
                         {"L", max_size},
                         {"k", k},
                         {"mode", mode_name(eval_config.mode)},
                         {"budget", budget},
                         {"tol", flags.tolerance}});

    const SearchResult result = exact_enumeration(dataset, max_size, eval_config, budget);
    emit_result(flags, manifest, search_result_to_json(result, dataset), search_result_text(result));
    return 0;
}

int cmd_baseline(const CommonFlags& flags, cli::RunManifest& manifest, const std::string& dataset_path,
                 std::size_t selection_size, std::size_t repeats, std::size_t k, const std::string& mode,
                 bool normalize) {
    manifest.add_input(dataset_path);
    const Dataset dataset = load_dataset_json(dataset_path, normalize);
    const EvalConfig eval_config{k, parse_mode(mode), flags.tolerance};
    manifest.set_config({{"dataset", dataset_path},
                         {"L", selection_size},
                         {"repeats", repeats},
                         {"k", k},
                         {"mode", mode_name(eval_config.mode)},
                         {"seed", flags.seed},
                         {"tol", flags.tolerance}});

    const ObjectiveStats stats =
        random_selection_baseline(dataset, selection_size, repeats, eval_config, flags.seed);

    json doc{{"mean", stats.mean},
             {"stddev", stats.stddev},
             {"min", stats.min},
             {"max", stats.max},
             {"repeats", stats.repeats}};
    std::ostringstream text;
    text << "mean: " << format_value(stats.mean) << '\n'
         << "stddev: " << format_value(stats.stddev) << '\n'
         << "min: " << format_value(stats.min) << '\n'
         << "max: " << format_value(stats.max) << '\n';
    emit_result(flags, manifest, std::move(doc), text.str());
    return 0;
}

int cmd_export_mip(const CommonFlags& flags, cli::RunManifest& manifest, const std::string& dataset_path,
                   const std::string& formulation, std::size_t max_size, std::size_t k,
                   std::optional<double> big_m, const std::string& solver_cmd,
                   const std::string& solution_path, bool normalize) {
    if (flags.output.empty()) throw std::runtime_error("export-mip needs --output for the model file");
    manifest.add_input(dataset_path);
    const Dataset dataset = load_dataset_json(dataset_path, normalize);

    MipModel model;
    if (formulation == "optimistic" || formulation == "opt") {
        model = build_optimistic_mip(dataset, max_size, k, big_m);
    } else if (formulation == "pessimistic" || formulation == "pess") {
        if (big_m) throw std::runtime_error("--big-m only applies to the optimistic formulation");
        model = build_pessimistic_mip(dataset, max_size, k);
    } else {
        throw std::runtime_error("unknown formulation: " + formulation);
    }
    manifest.set_config({{"dataset", dataset_path},
                         {"formulation", formulation},
                         {"L", max_size},
                         {"k", k},
                         {"big_m", big_m ? json(*big_m) : json(nullptr)},
                         {"variables", model.variables().size()},
                         {"constraints", model.constraints().size()}});

    write_exchange_file(model, flags.output);
    const std::string manifest_path = manifest.write(flags.output);

    json doc{{"model", flags.output},
             {"formulation", formulation},
             {"variables", model.variables().size()},
             {"constraints", model.constraints().size()},
             {"manifest", manifest_path}};
    std::ostringstream text;
    text << "wrote " << flags.output << " (" << model.variables().size() << " variables, "
         << model.constraints().size() << " constraints)\n";

    if (!solver_cmd.empty()) {
        std::string solution = solution_path.empty() ? flags.output + ".sol" : solution_path;
        std::string command = solver_cmd;
        auto replace_all = [&command](const std::string& from, const std::string& to) {
            for (std::size_t pos = command.find(from); pos != std::string::npos;
                 pos = command.find(from, pos + to.size()))
                command.replace(pos, from.size(), to);
        };
        replace_all("{model}", flags.output);
        replace_all("{solution}", solution);
        const int status = std::system(command.c_str());
        if (status != 0) throw std::runtime_error("solver command failed: " + command);

        const SolutionFile parsed = read_solution_file(solution);
        const FeatureSelection selection = selection_from_solution(model, parsed.values);
        if (selection.empty()) throw std::runtime_error("solver solution selects no features");
        const TieMode mode = formulation.front() == 'o' ? TieMode::optimistic : TieMode::pessimistic;
        const CrosscheckReport report = crosscheck_solution(
            dataset, selection, {k, mode, flags.tolerance}, parsed.objective);
        doc["solver"] = {{"command", command},
                         {"solution_file", solution},
                         {"selection", selection.indices},
                         {"claimed_objective",
                          parsed.objective ? json(*parsed.objective) : json(nullptr)},
                         {"core_objective", report.core_objective},
                         {"match", report.match}};
        text << "solver selection " << selection.to_string() << ", core objective "
             << format_value(report.core_objective) << (report.match ? " (match)" : " (MISMATCH)")
             << '\n';
    }

    if (flags.json_output)
        std::cout << doc.dump(2) << '\n';
    else
        std::cout << text.str();
    return 0;
}

int cmd_check_solution(const CommonFlags& flags, cli::RunManifest& manifest,
                       const std::string& dataset_path, const std::string& solution_path, std::size_t k,
                       const std::string& mode, std::optional<double> claimed, bool normalize) {
    manifest.add_input(dataset_path);
    manifest.add_input(solution_path);
    const Dataset dataset = load_dataset_json(dataset_path, normalize);
    const SolutionFile parsed = read_solution_file(solution_path);

    std::vector<std::size_t> indices;
    for (std::size_t f = 0; f < dataset.n_features(); ++f) {
        auto it = parsed.values.find("b_" + std::to_string(f));
        if (it != parsed.values.end() && it->second > 0.5) indices.push_back(f);
    }
    const FeatureSelection selection(std::move(indices));
    if (selection.empty()) throw std::runtime_error("solution file selects no features");

    if (!claimed && parsed.objective) claimed = parsed.objective;
    const EvalConfig config{k, parse_mode(mode), flags.tolerance};
    manifest.set_config({{"dataset", dataset_path},
                         {"solution", solution_path},
                         {"k", k},
                         {"mode", mode_name(config.mode)},
                         {"claimed", claimed ? json(*claimed) : json(nullptr)}});

    const CrosscheckReport report = crosscheck_solution(dataset, selection, config, claimed);
    json doc{{"selection", selection_to_json(selection, dataset)},
             {"mip_objective_claimed", claimed ? json(*claimed) : json(nullptr)},
             {"core_objective", report.core_objective},
             {"match", report.match},
             {"tolerance", report.tolerance}};
    std::ostringstream text;
    text << "selection: " << selection.to_string() << '\n'
         << "core objective: " << format_value(report.core_objective) << '\n';
    if (claimed)
        text << "claimed: " << format_value(*claimed) << (report.match ? " (match)" : " (MISMATCH)")
             << '\n';
    emit_result(flags, manifest, std::move(doc), text.str());
    return 0; // a mismatch is a reported outcome, not an error
}

int cmd_reduce_mc(const CommonFlags& flags, cli::RunManifest& manifest, const std::string& mc_path) {
    if (flags.output.empty()) throw std::runtime_error("reduce-mc needs --output for the dataset file");
    manifest.add_input(mc_path);
    const MaxCoverageInstance mc = load_max_coverage_json(mc_path);
    const ReducedInstance reduced = reduce_max_coverage(mc);
    manifest.set_config({{"mc", mc_path},
                         {"universe_size", mc.universe_size},
                         {"subsets", mc.subsets.size()},
                         {"K", mc.K},
                         {"W", mc.W}});

    save_dataset_json(reduced.dataset, flags.output);
    const std::string manifest_path = manifest.write(flags.output);

    json doc{{"dataset", flags.output},
             {"n_points", reduced.dataset.n_points()},
             {"n_features", reduced.dataset.n_features()},
             {"L", reduced.max_selected},
             {"k", reduced.k},
             {"manifest", manifest_path}};
    std::ostringstream text;
    text << "wrote " << flags.output << " (N=" << reduced.dataset.n_points() << ", p="
         << reduced.dataset.n_features() << ", L=" << reduced.max_selected << ", k=" << reduced.k
         << ")\n";
    if (flags.json_output)
        std::cout << doc.dump(2) << '\n';
    else
        std::cout << text.str();
    return 0;
}

int cmd_experiment(const CommonFlags& flags, cli::RunManifest& manifest, const std::string& config_path,
                   std::string data_dir, std::size_t threads) {
    if (flags.output.empty()) throw std::runtime_error("experiment needs --output as a file prefix");
    manifest.add_input(config_path);
    std::ifstream in(config_path);
    if (!in) throw std::runtime_error("cannot open experiment config: " + config_path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    pathlab::ExperimentConfig config = pathlab::parse_experiment_config(text);
    if (flags.seed != 0) config.seed = flags.seed;
    if (threads != 0) config.threads = threads;
    config.tie_tolerance = flags.tolerance;
    if (data_dir.empty())
        if (const char* env = std::getenv("EXFEAT_DATA_DIR")) data_dir = env;

    manifest.set_seed(config.seed);
    manifest.set_config(json::parse(pathlab::experiment_config_to_json(config)));

    const pathlab::RoadInstanceData data = pathlab::load_experiment_data(config, data_dir);
    const pathlab::ExperimentResult result = pathlab::run_experiment(config, data);

    const std::string csv_path = flags.output + ".csv";
    const std::string summary_path = flags.output + ".summary.json";
    const std::string manifest_path = manifest.write(flags.output + ".csv");
    write_text_file(csv_path, "# manifest: " + manifest_path + "\n" + result.csv);
    json summary = json::parse(result.summary_json);
    summary["manifest"] = manifest_path;
    write_text_file(summary_path, summary.dump(2) + "\n");

    json doc{{"csv", csv_path}, {"summary", summary_path}, {"manifest", manifest_path},
             {"rows", result.rows.size()}};
    if (flags.json_output)
        std::cout << doc.dump(2) << '\n';
    else
        std::cout << "wrote " << csv_path << " and " << summary_path << " (" << result.rows.size()
                  << " rows)\n";
    return 0;
}

int cmd_gen_synthetic(const CommonFlags& flags, cli::RunManifest& manifest, std::size_t n_points,
                      std::size_t n_features, std::size_t n_solution_features) {
    if (flags.output.empty()) throw std::runtime_error("gen-synthetic needs --output for the dataset file");
    manifest.set_seed(flags.seed);
    manifest.set_config({{"n_points", n_points},
                         {"n_features", n_features},
                         {"n_solution_features", n_solution_features},
                         {"seed", flags.seed}});

    const Dataset dataset =
        generate_synthetic_dataset(n_points, n_features, n_solution_features, flags.seed);
    save_dataset_json(dataset, flags.output);
    const std::string manifest_path = manifest.write(flags.output);

    json doc{{"dataset", flags.output},
             {"n_points", n_points},
             {"n_features", n_features},
             {"manifest", manifest_path}};
    if (flags.json_output)
        std::cout << doc.dump(2) << '\n';
    else
        std::cout << "wrote " << flags.output << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"feature selection for explainable optimization"};
    app.set_version_flag("--version", cli::kToolVersion);
    app.require_subcommand(1);

    cli::RunManifest manifest(argc, argv);

    // evaluate
    auto* evaluate = app.add_subcommand("evaluate", "Evaluate one feature selection");
    CommonFlags evaluate_flags;
    evaluate_flags.attach(evaluate);
    std::string evaluate_dataset, evaluate_select, evaluate_mode = "pessimistic";
    std::size_t evaluate_k = 1;
    bool evaluate_normalize = false;
    evaluate->add_option("--dataset", evaluate_dataset, "Dataset JSON file")->required();
    evaluate->add_option("--select", evaluate_select, "Comma-separated feature indices (0-based)")
        ->required();
    evaluate->add_option("--k", evaluate_k, "Neighborhood size");
    evaluate->add_option("--mode", evaluate_mode, "optimistic|pessimistic");
    evaluate->add_flag("--normalize", evaluate_normalize, "Min-max normalize numeric features");

    // select (swap search)
    auto* select = app.add_subcommand("select", "Swap-search feature selection");
    CommonFlags select_flags;
    select_flags.attach(select);
    std::string select_dataset, select_mode = "pessimistic";
    std::size_t select_k = 1;
    bool select_normalize = false;
    KOptConfig select_config;
    select->add_option("--dataset", select_dataset, "Dataset JSON file")->required();
    select->add_option("--L", select_config.selection_size, "Number of features to select")->required();
    select->add_option("--K", select_config.swap_size, "Swap size");
    select->add_option("--max-moves", select_config.max_sampled_moves, "Sampled moves per pass");
    select->add_option("--cutoff", select_config.improving_moves_cutoff,
                       "Improvements before a pass restarts");
    select->add_option("--starts", select_config.start_candidates, "Start candidates per restart");
    select->add_option("--restarts", select_config.restarts, "Restarts");
    select->add_option("--k", select_k, "Neighborhood size");
    select->add_option("--mode", select_mode, "optimistic|pessimistic");
    select->add_flag("--normalize", select_normalize, "Min-max normalize numeric features");

    // exact enumeration
    auto* exact = app.add_subcommand("exact", "Exact enumeration of all selections");
    CommonFlags exact_flags;
    exact_flags.attach(exact);
    std::string exact_dataset, exact_mode = "pessimistic";
    std::size_t exact_L = 1, exact_k = 1;
    std::uint64_t exact_budget = 1000000;
    bool exact_normalize = false;
    exact->add_option("--dataset", exact_dataset, "Dataset JSON file")->required();
    exact->add_option("--L", exact_L, "Maximum selection size")->required();
    exact->add_option("--k", exact_k, "Neighborhood size");
    exact->add_option("--mode", exact_mode, "optimistic|pessimistic");
    exact->add_option("--budget", exact_budget, "Enumeration budget");
    exact->add_flag("--normalize", exact_normalize, "Min-max normalize numeric features");

    // random baseline
    auto* baseline = app.add_subcommand("baseline-random", "Random selection baseline statistics");
    CommonFlags baseline_flags;
    baseline_flags.attach(baseline);
    std::string baseline_dataset, baseline_mode = "pessimistic";
    std::size_t baseline_L = 1, baseline_repeats = 100, baseline_k = 1;
    bool baseline_normalize = false;
    baseline->add_option("--dataset", baseline_dataset, "Dataset JSON file")->required();
    baseline->add_option("--L", baseline_L, "Selection size")->required();
    baseline->add_option("--repeats", baseline_repeats, "Number of random draws");
    baseline->add_option("--k", baseline_k, "Neighborhood size");
    baseline->add_option("--mode", baseline_mode, "optimistic|pessimistic");
    baseline->add_flag("--normalize", baseline_normalize, "Min-max normalize numeric features");

    // export-mip
    auto* export_mip = app.add_subcommand("export-mip", "Write a model file in LP format");
    CommonFlags export_flags;
    export_flags.attach(export_mip);
    std::string export_dataset, export_formulation = "optimistic", export_solver_cmd, export_solution;
    std::size_t export_L = 1, export_k = 1;
    double export_big_m = -1.0;
    bool export_normalize = false;
    export_mip->add_option("--dataset", export_dataset, "Dataset JSON file")->required();
    export_mip->add_option("--formulation", export_formulation, "optimistic|pessimistic");
    export_mip->add_option("--L", export_L, "Selection budget")->required();
    export_mip->add_option("--k", export_k, "Neighborhood size");
    export_mip->add_option("--big-m", export_big_m, "Override the big-M constant (optimistic only)");
    export_mip->add_option("--solver-cmd", export_solver_cmd,
                           "Solver command with {model} and {solution} placeholders");
    export_mip->add_option("--solution", export_solution, "Solution file the solver writes");
    export_mip->add_flag("--normalize", export_normalize, "Min-max normalize numeric features");

    // check-solution
    auto* check = app.add_subcommand("check-solution", "Re-evaluate a solver solution");
    CommonFlags check_flags;
    check_flags.attach(check);
    std::string check_dataset, check_solution, check_mode = "pessimistic";
    std::size_t check_k = 1;
    double check_claimed = std::numeric_limits<double>::quiet_NaN();
    bool check_normalize = false;
    check->add_option("--dataset", check_dataset, "Dataset JSON file")->required();
    check->add_option("--solution", check_solution, "Solution file (name value lines)")->required();
    check->add_option("--k", check_k, "Neighborhood size");
    check->add_option("--mode", check_mode, "optimistic|pessimistic");
    check->add_option("--claimed", check_claimed, "Claimed objective value");
    check->add_flag("--normalize", check_normalize, "Min-max normalize numeric features");

    // reduce-mc
    auto* reduce = app.add_subcommand("reduce-mc", "Build a dataset from a coverage instance");
    CommonFlags reduce_flags;
    reduce_flags.attach(reduce);
    std::string reduce_mc;
    reduce->add_option("--mc", reduce_mc, "Coverage instance JSON file")->required();

    // experiment
    auto* experiment = app.add_subcommand("experiment", "Run the routing experiment pipeline");
    CommonFlags experiment_flags;
    experiment_flags.attach(experiment);
    std::string experiment_config, experiment_data_dir;
    std::size_t experiment_threads = 0;
    experiment->add_option("--config", experiment_config, "Experiment config JSON")->required();
    experiment->add_option("--data-dir", experiment_data_dir,
                           "Data directory (or EXFEAT_DATA_DIR)");
    experiment->add_option("--threads", experiment_threads, "Worker pool size (0 = hardware)");

    // gen-synthetic
    auto* gen = app.add_subcommand("gen-synthetic", "Write a reproducible synthetic dataset");
    CommonFlags gen_flags;
    gen_flags.attach(gen);
    std::size_t gen_points = 10, gen_features = 6, gen_solution_features = 4;
    gen->add_option("--n-points", gen_points, "Data points");
    gen->add_option("--n-features", gen_features, "Feature columns");
    gen->add_option("--n-solution-features", gen_solution_features, "Solution feature columns");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        if (*evaluate) {
            manifest.set_seed(evaluate_flags.seed);
            return cmd_evaluate(evaluate_flags, manifest, evaluate_dataset, evaluate_select, evaluate_k,
                                evaluate_mode, evaluate_normalize);
        }
        if (*select) {
            manifest.set_seed(select_flags.seed);
            return cmd_select(select_flags, manifest, select_dataset, select_config, select_k,
                              select_mode, select_normalize);
        }
        if (*exact) {
            manifest.set_seed(exact_flags.seed);
            return cmd_exact(exact_flags, manifest, exact_dataset, exact_L, exact_k, exact_mode,
                             exact_budget, exact_normalize);
        }
        if (*baseline) {
            manifest.set_seed(baseline_flags.seed);
            return cmd_baseline(baseline_flags, manifest, baseline_dataset, baseline_L,
                                baseline_repeats, baseline_k, baseline_mode, baseline_normalize);
        }
        if (*export_mip) {
            std::optional<double> big_m;
            if (export_big_m >= 0.0) big_m = export_big_m;
            return cmd_export_mip(export_flags, manifest, export_dataset, export_formulation, export_L,
                                  export_k, big_m, export_solver_cmd, export_solution,
                                  export_normalize);
        }
        if (*check) {
            std::optional<double> claimed;
            if (!std::isnan(check_claimed)) claimed = check_claimed;
            return cmd_check_solution(check_flags, manifest, check_dataset, check_solution, check_k,
                                      check_mode, claimed, check_normalize);
        }
        if (*reduce) return cmd_reduce_mc(reduce_flags, manifest, reduce_mc);
        if (*experiment)
            return cmd_experiment(experiment_flags, manifest, experiment_config, experiment_data_dir,
                                  experiment_threads);
        if (*gen) return cmd_gen_synthetic(gen_flags, manifest, gen_points, gen_features,
                                           gen_solution_features);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
