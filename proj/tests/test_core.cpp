#include <doctest.h>

#include <algorithm>
#include <future>
#include <numeric>

#include "exfeat/dataset_io.hpp"
#include "exfeat/evaluate.hpp"
#include "exfeat/rng.hpp"
#include "exfeat/synthetic.hpp"
#include "helpers/fixtures.hpp"
#include "helpers/oracles.hpp"

using namespace exfeat;
using tests::toy_dataset;
using tests::knapsack_dataset;

namespace {

// random dataset with integer-valued features (many exact distance ties) and
// solution distances on a quarter-unit grid (sums stay exactly representable)
Dataset make_tied_dataset(std::uint64_t seed, std::size_t n, std::size_t p, std::size_t q) {
    Rng rng(derive_seed(seed, 0x71ed));
    std::vector<FeatureColumn> cols(p);
    for (std::size_t f = 0; f < p; ++f) {
        cols[f].name = "f" + std::to_string(f);
        cols[f].kind = FeatureKind::numeric;
        for (std::size_t i = 0; i < n; ++i)
            cols[f].values.push_back(static_cast<double>(rng.uniform_index(3)));
    }
    std::vector<std::vector<double>> sol(n, std::vector<double>(q));
    for (auto& row : sol)
        for (auto& v : row) v = static_cast<double>(rng.uniform_index(9)) * 0.25;
    return Dataset(std::move(cols), solution_distance_matrix(sol));
}

} // namespace

TEST_CASE("featurewise distance") {
    const Dataset toy = toy_dataset();
    CHECK(featurewise_distance(toy, 0, 1, 0) == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(featurewise_distance(toy, 0, 0, 0) == 0.0);
    CHECK(featurewise_distance(toy, 0, 2, 1) == 0.0); // equal lower-edge weights

    const Dataset knapsack = knapsack_dataset();
    CHECK(featurewise_distance(knapsack, 0, 3, 1) == 0.0); // both healthcare
    CHECK(featurewise_distance(knapsack, 0, 1, 1) == 1.0); // healthcare vs education

    CHECK_THROWS_AS(featurewise_distance(toy, 0, 3, 0), std::out_of_range);
    CHECK_THROWS_AS(featurewise_distance(toy, 0, 1, 2), std::out_of_range);
}

TEST_CASE("selected instance distance") {
    const Dataset knapsack = knapsack_dataset();
    const FeatureSelection informative({2, 4});
    CHECK(selected_instance_distance(knapsack, 0, 1, informative) == doctest::Approx(0.03).epsilon(1e-12));

    // a constant column contributes nothing
    const FeatureSelection all({0, 1, 2, 3, 4});
    const FeatureSelection without_constant({0, 1, 2, 4});
    Dataset with_constant = [] {
        FeatureColumn c{"const", FeatureKind::numeric, {7.0, 7.0, 7.0, 7.0}, {}};
        auto cols = knapsack_dataset().features();
        cols.push_back(c);
        return Dataset(cols, knapsack_dataset().solution_distance_matrix());
    }();
    const FeatureSelection all_plus_constant({0, 1, 2, 3, 4, 5});
    CHECK(selected_instance_distance(with_constant, 1, 2, all_plus_constant) ==
          selected_instance_distance(knapsack, 1, 2, all));

    const Dataset toy = toy_dataset();
    CHECK(selected_instance_distance(toy, 0, 2, FeatureSelection({1})) == 0.0);
    CHECK_THROWS_AS(selected_instance_distance(toy, 0, 1, FeatureSelection{}), std::invalid_argument);
}

TEST_CASE("solution distance matrix") {
    const auto matrix = solution_distance_matrix(tests::knapsack_solution_features());
    CHECK(matrix[0 * 4 + 1] == 0.0);
    CHECK(matrix[0 * 4 + 2] == doctest::Approx(1.25).epsilon(1e-12));
    CHECK(matrix[0 * 4 + 3] == doctest::Approx(1.32).epsilon(1e-12));
    CHECK(matrix[2 * 4 + 3] == doctest::Approx(0.07).epsilon(1e-12));
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(matrix[i * 4 + i] == 0.0);
        for (std::size_t j = 0; j < 4; ++j) CHECK(matrix[i * 4 + j] == matrix[j * 4 + i]);
    }

    const auto identical = solution_distance_matrix({{1.0, 2.0}, {1.0, 2.0}});
    CHECK(identical[1] == 0.0);
}

TEST_CASE("classify neighbors") {
    const Dataset toy = toy_dataset();
    const EvalConfig config{1, TieMode::optimistic, 1e-9};

    SUBCASE("borderline tie on the lower edge") {
        const auto cls = classify_neighbors(toy, 1, FeatureSelection({1}), config);
        CHECK(cls.epsilon == doctest::Approx(0.1).epsilon(1e-12));
        CHECK(cls.strict.empty());
        CHECK(cls.borderline == std::vector<std::size_t>{0, 2});
        CHECK(cls.k_bar == 1);
    }

    SUBCASE("constant feature makes everything borderline") {
        FeatureColumn constant{"const", FeatureKind::numeric, {3.0, 3.0, 3.0}, {}};
        const Dataset flat({constant}, toy.solution_distance_matrix());
        const auto cls = classify_neighbors(flat, 0, FeatureSelection({0}), config);
        CHECK(cls.epsilon == 0.0);
        CHECK(cls.strict.empty());
        CHECK(cls.borderline == std::vector<std::size_t>{1, 2});
    }

    SUBCASE("distinct distances with k = 2") {
        const EvalConfig two{2, TieMode::optimistic, 1e-9};
        const auto cls = classify_neighbors(toy, 0, FeatureSelection({0}), two);
        // distances from instance 0 under the upper edge: 0.9 and 2.0
        CHECK(cls.epsilon == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(cls.strict == std::vector<std::size_t>{1});
        CHECK(cls.borderline == std::vector<std::size_t>{2});
        CHECK(cls.k_bar == 1);
    }

    SUBCASE("k out of range") {
        const EvalConfig bad{3, TieMode::optimistic, 1e-9};
        CHECK_THROWS_AS(classify_neighbors(toy, 0, FeatureSelection({0}), bad), std::invalid_argument);
    }
}

TEST_CASE("objective table of the two-edge instances") {
    const Dataset toy = toy_dataset();
    const FeatureSelection upper({0}), lower({1});
    const EvalConfig opt{1, TieMode::optimistic, 1e-9};
    const EvalConfig pess{1, TieMode::pessimistic, 1e-9};

    CHECK(evaluate_selection(toy, upper, opt).objective == 2.0);
    CHECK(evaluate_selection(toy, upper, pess).objective == 2.0);
    CHECK(evaluate_selection(toy, lower, opt).objective == 2.0);
    CHECK(evaluate_selection(toy, lower, pess).objective == 3.0);

    // under the lower edge, instance 1 tie-breaks between instances 0 and 2
    const auto optimistic = evaluate_selection(toy, lower, opt);
    CHECK(optimistic.per_point[1].neighbors == std::vector<std::size_t>{2});
    const auto pessimistic = evaluate_selection(toy, lower, pess);
    CHECK(pessimistic.per_point[1].neighbors == std::vector<std::size_t>{0});
}

TEST_CASE("knapsack evaluation under the informative pair") {
    const Dataset knapsack = knapsack_dataset();
    const EvalConfig pess{1, TieMode::pessimistic, 1e-9};
    const auto result = evaluate_selection(knapsack, FeatureSelection({2, 4}), pess);
    CHECK(result.objective == doctest::Approx(0.14).epsilon(1e-12));
    CHECK(result.per_point[0].neighbors == std::vector<std::size_t>{1});
    CHECK(result.per_point[1].neighbors == std::vector<std::size_t>{0});
    CHECK(result.per_point[2].neighbors == std::vector<std::size_t>{3});
    CHECK(result.per_point[3].neighbors == std::vector<std::size_t>{2});
}

TEST_CASE("per point sets always have k members and sum to the objective") {
    for (std::uint64_t seed : {1, 2, 3}) {
        const Dataset data = generate_synthetic_dataset(12, 6, 3, seed);
        const EvalConfig config{4, TieMode::pessimistic, 1e-9};
        const auto result = evaluate_selection(data, FeatureSelection({0, 2, 5}), config);
        double total = 0.0;
        for (const auto& pc : result.per_point) {
            CHECK(pc.neighbors.size() == 4);
            total += pc.contribution;
        }
        CHECK(result.objective == doctest::Approx(total).epsilon(1e-12));
    }
}

TEST_CASE("pessimistic dominates optimistic") {
    Rng rng(99);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Dataset data = make_tied_dataset(seed, 10, 4, 2);
        const std::size_t k = 1 + rng.uniform_index(6);
        FeatureSelection sel(rng.sample_without_replacement(4, 1 + rng.uniform_index(3)));
        const double opt =
            evaluate_selection(data, sel, {k, TieMode::optimistic, 1e-9}).objective;
        const double pess =
            evaluate_selection(data, sel, {k, TieMode::pessimistic, 1e-9}).objective;
        CHECK(pess >= opt - 1e-12);
    }
}

TEST_CASE("relabeling points permutes contributions") {
    const Dataset data = generate_synthetic_dataset(9, 5, 3, 42);
    std::vector<std::size_t> perm(9);
    std::iota(perm.begin(), perm.end(), 0);
    Rng rng(7);
    rng.shuffle(perm);

    std::vector<FeatureColumn> cols = data.features();
    for (auto& col : cols) {
        std::vector<double> values(9);
        for (std::size_t i = 0; i < 9; ++i) values[perm[i]] = col.values[i];
        col.values = std::move(values);
    }
    std::vector<double> matrix(81);
    for (std::size_t i = 0; i < 9; ++i)
        for (std::size_t j = 0; j < 9; ++j)
            matrix[perm[i] * 9 + perm[j]] = data.solution_distance(i, j);
    const Dataset permuted(std::move(cols), std::move(matrix));

    const EvalConfig config{3, TieMode::pessimistic, 1e-9};
    const FeatureSelection sel({1, 3});
    const auto base = evaluate_selection(data, sel, config);
    const auto moved = evaluate_selection(permuted, sel, config);
    CHECK(moved.objective == doctest::Approx(base.objective).epsilon(1e-12));
    for (std::size_t i = 0; i < 9; ++i)
        CHECK(moved.per_point[perm[i]].contribution ==
              doctest::Approx(base.per_point[i].contribution).epsilon(1e-12));
}

TEST_CASE("constant-only selection reduces to sorted solution distances") {
    const Dataset base = generate_synthetic_dataset(8, 3, 2, 5);
    FeatureColumn constant{"const", FeatureKind::numeric, std::vector<double>(8, 1.5), {}};
    auto cols = base.features();
    cols.push_back(constant);
    const Dataset data(std::move(cols), base.solution_distance_matrix());

    const std::size_t k = 3;
    const FeatureSelection only_constant({3});
    const double opt =
        evaluate_selection(data, only_constant, {k, TieMode::optimistic, 1e-9}).objective;
    const double pess =
        evaluate_selection(data, only_constant, {k, TieMode::pessimistic, 1e-9}).objective;

    double expect_opt = 0.0, expect_pess = 0.0;
    for (std::size_t i = 0; i < 8; ++i) {
        std::vector<double> row;
        for (std::size_t j = 0; j < 8; ++j)
            if (j != i) row.push_back(data.solution_distance(i, j));
        std::sort(row.begin(), row.end());
        for (std::size_t t = 0; t < k; ++t) {
            expect_opt += row[t];
            expect_pess += row[row.size() - 1 - t];
        }
    }
    CHECK(opt == doctest::Approx(expect_opt).epsilon(1e-12));
    CHECK(pess == doctest::Approx(expect_pess).epsilon(1e-12));
}

TEST_CASE("evaluator matches subset enumeration on tied data") {
    std::size_t checked = 0;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const Dataset data = make_tied_dataset(seed, 11, 3, 2);
        Rng rng(derive_seed(seed, 1));
        const std::size_t k = 1 + rng.uniform_index(5);
        const FeatureSelection sel(rng.sample_without_replacement(3, 1 + rng.uniform_index(2)));
        const EvalConfig base{k, TieMode::optimistic, 1e-9};

        for (TieMode mode : {TieMode::optimistic, TieMode::pessimistic}) {
            EvalConfig config = base;
            config.mode = mode;
            const auto result = evaluate_selection(data, sel, config);
            for (std::size_t i = 0; i < data.n_points(); ++i) {
                const auto cls = classify_neighbors(data, i, sel, config);
                CHECK(cls.strict.size() < k);
                CHECK(cls.strict.size() + cls.borderline.size() >= k);
                if (cls.borderline.size() > 12) continue;
                const double expected = tests::brute_force_contribution(data, cls, mode);
                CHECK(result.per_point[i].contribution == expected);
                ++checked;
            }
        }
    }
    CHECK(checked > 300);
}

TEST_CASE("synthetic generator") {
    const Dataset a = generate_synthetic_dataset(10, 6, 4, 1);
    const Dataset b = generate_synthetic_dataset(10, 6, 4, 1);
    CHECK(a.n_points() == 10);
    CHECK(a.n_features() == 6);
    for (std::size_t f = 0; f < 6; ++f) {
        CHECK(a.feature(f).kind == b.feature(f).kind);
        CHECK(a.feature(f).values == b.feature(f).values);
    }
    CHECK(a.solution_distance_matrix() == b.solution_distance_matrix());

    const Dataset c = generate_synthetic_dataset(10, 6, 4, 2);
    CHECK(a.solution_distance_matrix() != c.solution_distance_matrix());

    CHECK_NOTHROW(generate_synthetic_dataset(2, 1, 1, 77));
    CHECK_THROWS_AS(generate_synthetic_dataset(1, 1, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(generate_synthetic_dataset(2, 0, 1, 0), std::invalid_argument);
}

TEST_CASE("dataset json round trip") {
    const Dataset original = knapsack_dataset();
    const std::string text = dataset_to_json(original);
    const Dataset loaded = parse_dataset_json(text);
    CHECK(loaded.n_points() == original.n_points());
    CHECK(loaded.n_features() == original.n_features());
    for (std::size_t f = 0; f < original.n_features(); ++f) {
        CHECK(loaded.feature(f).name == original.feature(f).name);
        CHECK(loaded.feature(f).kind == original.feature(f).kind);
        CHECK(loaded.feature(f).values == original.feature(f).values);
    }
    CHECK(loaded.solution_distance_matrix() == original.solution_distance_matrix());
    CHECK(dataset_to_json(loaded) == text);
}

TEST_CASE("dataset json variants and validation") {
    const char* with_solution_features = R"({
        "features": [{"name": "a", "kind": "numeric", "values": [1.0, 2.0, 4.0]}],
        "solution_features": [[0.0], [1.0], [3.0]]
    })";
    const Dataset data = parse_dataset_json(with_solution_features);
    CHECK(data.solution_distance(0, 2) == 3.0);

    CHECK_THROWS(parse_dataset_json(R"({"features": []})"));
    CHECK_THROWS(parse_dataset_json(R"({
        "features": [{"name": "a", "kind": "numeric", "values": [1, 2]}],
        "solution_distance": [[0, 1], [2, 0]]
    })")); // asymmetric
    CHECK_THROWS(parse_dataset_json(R"({
        "features": [{"name": "a", "kind": "numeric", "values": [1, 2]}],
        "solution_distance": [[1, 0], [0, 1]]
    })")); // nonzero diagonal

    // min-max normalization maps numeric columns onto [0, 1]
    const char* to_normalize = R"({
        "features": [{"name": "a", "kind": "numeric", "values": [2.0, 4.0, 6.0]}],
        "solution_distance": [[0,1,1],[1,0,1],[1,1,0]]
    })";
    const Dataset normalized = parse_dataset_json(to_normalize, true);
    CHECK(normalized.feature(0).values == std::vector<double>{0.0, 0.5, 1.0});
}

TEST_CASE("concurrent evaluations agree with sequential ones") {
    const Dataset data = generate_synthetic_dataset(30, 8, 3, 11);
    const EvalConfig config{5, TieMode::pessimistic, 1e-9};
    std::vector<FeatureSelection> selections;
    Rng rng(3);
    for (int s = 0; s < 8; ++s)
        selections.emplace_back(rng.sample_without_replacement(8, 1 + rng.uniform_index(4)));

    std::vector<double> sequential;
    for (const auto& sel : selections)
        sequential.push_back(evaluate_selection(data, sel, config).objective);

    std::vector<std::future<double>> futures;
    for (const auto& sel : selections)
        futures.push_back(std::async(std::launch::async, [&data, &config, sel] {
            return evaluate_selection(data, sel, config).objective;
        }));
    for (std::size_t s = 0; s < selections.size(); ++s) CHECK(futures[s].get() == sequential[s]);
}
