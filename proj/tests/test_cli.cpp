#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

struct CliResult {
    int exit_code = -1;
    std::string output;
};

const char* cli_path() { return std::getenv("EXFEAT_CLI"); }
const char* source_dir() { return std::getenv("EXFEAT_SOURCE_DIR"); }

CliResult run_cli(const std::string& args) {
    CliResult result;
    const std::string command = std::string(cli_path()) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 512> chunk{};
    while (fgets(chunk.data(), chunk.size(), pipe)) result.output += chunk.data();
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string fixture(const std::string& name) {
    return std::string(source_dir()) + "/data/fixtures/" + name;
}

} // namespace

TEST_CASE("cli evaluate prints the objective") {
    REQUIRE(cli_path() != nullptr);
    REQUIRE(source_dir() != nullptr);

    const CliResult lower = run_cli("evaluate --dataset " + fixture("toy.json") +
                                    " --select 1 --k 1 --mode pessimistic");
    CHECK(lower.exit_code == 0);
    CHECK(lower.output.find("objective: 3") != std::string::npos);

    const CliResult upper = run_cli("evaluate --dataset " + fixture("toy.json") +
                                    " --select 0 --k 1 --mode pessimistic --json");
    CHECK(upper.exit_code == 0);
    const auto doc = nlohmann::json::parse(upper.output);
    CHECK(doc["objective"] == 2.0);
    CHECK(doc["per_point"].size() == 3);
}

TEST_CASE("cli exact finds the unique pessimistic choice") {
    const CliResult result =
        run_cli("exact --dataset " + fixture("toy.json") + " --L 1 --mode pessimistic --json");
    CHECK(result.exit_code == 0);
    const auto doc = nlohmann::json::parse(result.output);
    CHECK(doc["objective"] == 2.0);
    CHECK(doc["selection"]["indices"] == nlohmann::json::array({0}));
    CHECK(doc["selection"]["names"][0] == "upper_edge");
}

TEST_CASE("cli knapsack enumeration matches the informative pair") {
    const CliResult best = run_cli("exact --dataset " + fixture("knapsack.json") +
                                   " --L 2 --k 1 --mode pessimistic --json");
    CHECK(best.exit_code == 0);
    const auto doc = nlohmann::json::parse(best.output);
    const CliResult informative = run_cli("evaluate --dataset " + fixture("knapsack.json") +
                                          " --select 2,4 --k 1 --mode pessimistic --json");
    const auto informative_doc = nlohmann::json::parse(informative.output);
    CHECK(doc["objective"].get<double>() ==
          doctest::Approx(informative_doc["objective"].get<double>()).epsilon(1e-12));
}

TEST_CASE("cli usage errors exit with 2") {
    CHECK(run_cli("evaluate --no-such-flag").exit_code == 2);
    CHECK(run_cli("no-such-command").exit_code == 2);
    CHECK(run_cli("evaluate").exit_code == 2); // missing required options
}

TEST_CASE("cli runtime errors exit with 1") {
    CHECK(run_cli("evaluate --dataset /nonexistent.json --select 0").exit_code == 1);
}

TEST_CASE("cli outputs are deterministic and carry a manifest") {
    const std::string dir = "./cli_test_tmp";
    REQUIRE(std::system(("rm -rf " + dir + " && mkdir -p " + dir).c_str()) == 0);

    const std::string gen_args = "gen-synthetic --n-points 8 --n-features 5 --seed 11 --output ";
    CHECK(run_cli(gen_args + dir + "/a.json").exit_code == 0);
    CHECK(run_cli(gen_args + dir + "/b.json").exit_code == 0);
    CHECK(read_file(dir + "/a.json") == read_file(dir + "/b.json"));

    const auto manifest = nlohmann::json::parse(read_file(dir + "/a.manifest.json"));
    CHECK(manifest["tool"] == "exfeat");
    CHECK(manifest["seed"] == 11);
    CHECK(manifest["config"]["n_points"] == 8);

    // result files reference the manifest that produced them
    const CliResult select = run_cli("select --dataset " + dir + "/a.json" +
                                     " --L 2 --k 2 --seed 3 --output " + dir + "/sel.json --json");
    CHECK(select.exit_code == 0);
    const auto sel_doc = nlohmann::json::parse(read_file(dir + "/sel.json"));
    CHECK(sel_doc["manifest"] == dir + "/sel.manifest.json");
    const auto sel_again = nlohmann::json::parse(run_cli("select --dataset " + dir + "/a.json" +
                                                         " --L 2 --k 2 --seed 3 --json")
                                                     .output);
    CHECK(sel_doc["objective"] == sel_again["objective"]);
    CHECK(sel_doc["selection"] == sel_again["selection"]);

    CHECK(std::system(("rm -rf " + dir).c_str()) == 0);
}

TEST_CASE("cli reduce-mc writes a loadable dataset") {
    const std::string dir = "./cli_test_tmp_mc";
    REQUIRE(std::system(("rm -rf " + dir + " && mkdir -p " + dir).c_str()) == 0);
    {
        std::ofstream mc(dir + "/mc.json");
        mc << R"({"universe_size": 2, "subsets": [[0], [0, 1]], "K": 1, "W": 2})";
    }
    const CliResult result =
        run_cli("reduce-mc --mc " + dir + "/mc.json --output " + dir + "/reduced.json --json");
    CHECK(result.exit_code == 0);
    const auto doc = nlohmann::json::parse(result.output);
    CHECK(doc["n_points"] == 12);
    CHECK(doc["k"] == 2);

    const CliResult eval = run_cli("evaluate --dataset " + dir + "/reduced.json" +
                                   " --select 1 --k 2 --mode pessimistic --json");
    CHECK(eval.exit_code == 0);
    // full cover via subset {0,1}: value 2k + 2(k+1)k + 2k^2 with k = 2
    CHECK(nlohmann::json::parse(eval.output)["objective"] == 2.0 * 2 + 2.0 * 3 * 2 + 2.0 * 4);
    CHECK(std::system(("rm -rf " + dir).c_str()) == 0);
}

TEST_CASE("cli experiment writes byte-identical outputs per seed") {
    const std::string dir = "./cli_test_tmp_exp";
    REQUIRE(std::system(("rm -rf " + dir + " && mkdir -p " + dir).c_str()) == 0);
    {
        std::ofstream config(dir + "/config.json");
        config << R"({
            "n_train": 10, "n_eval": 3, "k": 2, "L_values": [1, 2],
            "grid": {"rows": 2, "cols": 2}, "include_edge_features": true,
            "repeats": 2, "random_baseline_repeats": 4, "random_path_repeats": 2,
            "seed": 21, "kopt": {"restarts": 2, "start_candidates": 3},
            "data": {"type": "synthetic", "rows": 4, "cols": 4, "n_scenarios": 30}
        })";
    }
    const CliResult a =
        run_cli("experiment --config " + dir + "/config.json --output " + dir + "/run_a --threads 2");
    CHECK(a.exit_code == 0);
    const CliResult b =
        run_cli("experiment --config " + dir + "/config.json --output " + dir + "/run_b --threads 1");
    CHECK(b.exit_code == 0);

    auto strip_manifest_line = [](std::string text) {
        return text.substr(text.find('\n') + 1); // first line names the manifest
    };
    CHECK(strip_manifest_line(read_file(dir + "/run_a.csv")) ==
          strip_manifest_line(read_file(dir + "/run_b.csv")));

    auto summary_without_manifest = [](const std::string& path) {
        auto doc = nlohmann::json::parse(std::ifstream(path));
        doc.erase("manifest");
        doc["config"]["threads"] = 0; // pool size is echoed but must not affect results
        return doc;
    };
    CHECK(summary_without_manifest(dir + "/run_a.summary.json") ==
          summary_without_manifest(dir + "/run_b.summary.json"));
    CHECK(std::system(("rm -rf " + dir).c_str()) == 0);
}
