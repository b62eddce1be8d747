#include <doctest.h>

#include <algorithm>
#include <limits>

#include "exfeat/evaluate.hpp"
#include "exfeat/rng.hpp"
#include "exfeat/solvers.hpp"
#include "exfeat/synthetic.hpp"
#include "helpers/fixtures.hpp"

using namespace exfeat;
using tests::knapsack_dataset;
using tests::toy_dataset;

namespace {

const EvalConfig kPess{1, TieMode::pessimistic, 1e-9};
const EvalConfig kOpt{1, TieMode::optimistic, 1e-9};

// every single swap of the final selection, checked explicitly
bool is_swap_local_optimum(const Dataset& data, const FeatureSelection& sel, double objective,
                           const EvalConfig& config) {
    for (std::size_t out : sel.indices) {
        for (std::size_t in = 0; in < data.n_features(); ++in) {
            if (sel.contains(in)) continue;
            std::vector<std::size_t> idx;
            for (std::size_t f : sel.indices)
                if (f != out) idx.push_back(f);
            idx.push_back(in);
            if (evaluate_selection(data, FeatureSelection(std::move(idx)), config).objective <
                objective - 1e-12)
                return false;
        }
    }
    return true;
}

} // namespace

TEST_CASE("exact enumeration on the two-edge instances") {
    const Dataset toy = toy_dataset();

    const SearchResult pess = exact_enumeration(toy, 1, kPess);
    CHECK(pess.best_selection == FeatureSelection({0}));
    CHECK(pess.best_objective == 2.0);

    // optimistic case ties at 2; the lexicographically smaller selection wins
    const SearchResult opt = exact_enumeration(toy, 1, kOpt);
    CHECK(opt.best_objective == 2.0);
    CHECK(opt.best_selection == FeatureSelection({0}));
    CHECK(opt.evaluations == 2);
}

TEST_CASE("exact enumeration on the knapsack instances") {
    const Dataset knapsack = knapsack_dataset();
    const SearchResult best = exact_enumeration(knapsack, 2, kPess);
    const double informative =
        evaluate_selection(knapsack, FeatureSelection({2, 4}), kPess).objective;
    CHECK(best.best_objective == doctest::Approx(informative).epsilon(1e-12));
    CHECK(best.evaluations == 5 + 10);
}

TEST_CASE("exact enumeration budget guard") {
    const Dataset data = generate_synthetic_dataset(6, 20, 2, 3);
    CHECK_THROWS_AS(exact_enumeration(data, 10, kPess, 100), std::runtime_error);
}

TEST_CASE("swap search on the two-edge instances") {
    const Dataset toy = toy_dataset();
    KOptConfig config;
    config.selection_size = 1;
    config.swap_size = 1;
    config.seed = 5;
    const SearchResult result = k_opt_search(toy, config, kPess);
    CHECK(result.best_selection == FeatureSelection({0}));
    CHECK(result.best_objective == 2.0);
}

TEST_CASE("swap search never loses to its own starts and matches the optimum on small data") {
    std::size_t optima_found = 0;
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        const Dataset data = generate_synthetic_dataset(10, 8, 3, 100 + seed);
        KOptConfig config;
        config.selection_size = 2;
        config.swap_size = 1;
        config.seed = seed;
        config.max_sampled_moves = 1000; // covers the whole 2 * 6 move space
        const SearchResult result = k_opt_search(data, config, kPess);

        // monotone improvement from the chosen start
        for (const SearchTracePoint& point : result.trace)
            if (point.iteration == 0) CHECK(result.best_objective <= point.objective + 1e-12);

        const SearchResult exact = exact_enumeration(data, 2, kPess);
        // enumeration also visits singletons, so compare against the size-2 floor
        CHECK(result.best_objective >= exact.best_objective - 1e-12);
        CHECK(is_swap_local_optimum(data, result.best_selection, result.best_objective, kPess));

        SearchResult exact_pairs = exact;
        if (exact.best_selection.size() != 2) {
            // best among pairs only, for a like-for-like comparison
            double best_pair = std::numeric_limits<double>::infinity();
            for (std::size_t a = 0; a < 8; ++a)
                for (std::size_t b = a + 1; b < 8; ++b)
                    best_pair = std::min(
                        best_pair,
                        evaluate_selection(data, FeatureSelection({a, b}), kPess).objective);
            exact_pairs.best_objective = best_pair;
        }
        if (result.best_objective <= exact_pairs.best_objective + 1e-12) ++optima_found;
    }
    CHECK(optima_found >= 11); // size-2 one-swap landscapes are almost always solved
}

TEST_CASE("swap search is deterministic per seed") {
    const Dataset data = generate_synthetic_dataset(12, 9, 3, 7);
    KOptConfig config;
    config.selection_size = 3;
    config.swap_size = 1;
    config.seed = 123;
    const SearchResult a = k_opt_search(data, config, kPess);
    const SearchResult b = k_opt_search(data, config, kPess);
    CHECK(a.best_selection == b.best_selection);
    CHECK(a.best_objective == b.best_objective);
    CHECK(a.evaluations == b.evaluations);
    CHECK(a.trace.size() == b.trace.size());

    config.seed = 124;
    const SearchResult c = k_opt_search(data, config, kPess);
    CHECK(c.evaluations > 0);
    CHECK(c.best_objective ==
          evaluate_selection(data, c.best_selection, kPess).objective);
}

TEST_CASE("swap search validates its configuration") {
    const Dataset data = generate_synthetic_dataset(8, 4, 2, 1);
    KOptConfig config;
    config.selection_size = 4; // p - L = 0 leaves nothing to swap in
    CHECK_THROWS_AS(k_opt_search(data, config, kPess), std::invalid_argument);
    config.selection_size = 2;
    config.swap_size = 3;
    CHECK_THROWS_AS(k_opt_search(data, config, kPess), std::invalid_argument);
    config.swap_size = 1;
    config.restarts = 0;
    CHECK_THROWS_AS(k_opt_search(data, config, kPess), std::invalid_argument);
}

TEST_CASE("random baseline statistics") {
    const Dataset knapsack = knapsack_dataset();

    // a single draw equals a direct evaluation of that subset
    const ObjectiveStats single = random_selection_baseline(knapsack, 2, 1, kPess, 42);
    Rng rng(derive_seed(42, 0xba5e11e));
    const FeatureSelection drawn(rng.sample_without_replacement(5, 2));
    CHECK(single.mean == evaluate_selection(knapsack, drawn, kPess).objective);
    CHECK(single.stddev == 0.0);
    CHECK(single.min == single.max);

    // the exact optimum is a lower bound for every draw
    const SearchResult exact = exact_enumeration(knapsack, 2, kPess);
    const ObjectiveStats many = random_selection_baseline(knapsack, 2, 50, kPess, 7);
    CHECK(many.min >= exact.best_objective - 1e-12);
    CHECK(many.mean >= many.min);
    CHECK(many.max >= many.mean);

    // L = p has a single possible subset
    const ObjectiveStats degenerate = random_selection_baseline(knapsack, 5, 20, kPess, 9);
    CHECK(degenerate.stddev == 0.0);
    CHECK(degenerate.min == degenerate.max);

    CHECK_THROWS_AS(random_selection_baseline(knapsack, 6, 1, kPess, 0), std::invalid_argument);
    CHECK_THROWS_AS(random_selection_baseline(knapsack, 2, 0, kPess, 0), std::invalid_argument);
}
