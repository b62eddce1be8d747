#include <doctest.h>

#include <algorithm>
#include <set>

#include "exfeat/evaluate.hpp"
#include "exfeat/hardness.hpp"
#include "exfeat/rng.hpp"
#include "exfeat/solvers.hpp"
#include "helpers/oracles.hpp"

using namespace exfeat;

namespace {

MaxCoverageInstance random_instance(std::uint64_t seed) {
    Rng rng(derive_seed(seed, 0x3c));
    MaxCoverageInstance mc;
    mc.universe_size = 2 + rng.uniform_index(3); // 2..4
    const std::size_t distinct = (std::size_t{1} << mc.universe_size) - 1;
    const std::size_t m = 1 + rng.uniform_index(std::min<std::size_t>(5, distinct));
    std::set<std::vector<std::size_t>> seen;
    while (mc.subsets.size() < m) {
        std::vector<std::size_t> subset;
        for (std::size_t e = 0; e < mc.universe_size; ++e)
            if (rng.bernoulli(0.5)) subset.push_back(e);
        if (subset.empty()) continue;
        if (seen.insert(subset).second) mc.subsets.push_back(std::move(subset));
    }
    mc.K = 1 + rng.uniform_index(std::min<std::size_t>(3, mc.subsets.size()));
    mc.W = 1 + rng.uniform_index(mc.universe_size);
    return mc;
}

std::vector<std::vector<std::size_t>> feasible_covers(const MaxCoverageInstance& mc) {
    std::vector<std::vector<std::size_t>> covers;
    const std::size_t m = mc.subsets.size();
    for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcount(mask)) > mc.K) continue;
        std::vector<std::size_t> cover;
        for (std::size_t j = 0; j < m; ++j)
            if (mask & (1u << j)) cover.push_back(j);
        covers.push_back(std::move(cover));
    }
    return covers;
}

// point type by index within the reduced layout
enum class PointType { center, plain, element, satellite };

PointType type_of(std::size_t index, std::size_t u) {
    if (index == 0) return PointType::center;
    if (index <= u + 1) return PointType::plain;
    if (index <= 2 * u + 1) return PointType::element;
    return PointType::satellite;
}

} // namespace

TEST_CASE("reduction sizes") {
    MaxCoverageInstance mc;
    mc.universe_size = 2;
    mc.subsets = {{0}, {1}, {0, 1}};
    mc.K = 2;
    mc.W = 2;
    const ReducedInstance reduced = reduce_max_coverage(mc);
    CHECK(reduced.dataset.n_points() == 12); // (u + 2)(u + 1)
    CHECK(reduced.dataset.n_features() == 3);
    CHECK(reduced.max_selected == 2);
    CHECK(reduced.k == 2);
}

TEST_CASE("duplicate subsets are rejected") {
    MaxCoverageInstance mc;
    mc.universe_size = 3;
    mc.subsets = {{0, 1}, {1, 0}};
    mc.K = 1;
    CHECK_THROWS_AS(reduce_max_coverage(mc), std::invalid_argument);
}

TEST_CASE("solution distances of the reduction follow the type table") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const MaxCoverageInstance mc = random_instance(seed);
        const ReducedInstance reduced = reduce_max_coverage(mc);
        const std::size_t u = mc.universe_size;
        const std::size_t n = reduced.dataset.n_points();

        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) {
                    CHECK(reduced.dataset.solution_distance(i, j) == 0.0);
                    continue;
                }
                const PointType a = type_of(i, u), b = type_of(j, u);
                const double d = reduced.dataset.solution_distance(i, j);
                double expected = -1.0;
                if (a == PointType::satellite && b == PointType::satellite) expected = 0.0;
                else if (a == PointType::center && b == PointType::plain) expected = 2.0;
                else if (a == PointType::plain && b == PointType::center) expected = 2.0;
                else if (a == PointType::center && b == PointType::element) expected = 4.0;
                else if (a == PointType::element && b == PointType::center) expected = 4.0;
                else if (a == PointType::center || b == PointType::center) expected = 2.0; // satellites
                else if (a == PointType::plain && b == PointType::plain) expected = 2.0;
                else if (a == PointType::plain && b == PointType::element) {
                    // same element index pairs at 2, different at 4
                    const std::size_t plain = (a == PointType::plain ? i : j) - 1;
                    const std::size_t element = (a == PointType::element ? i : j) - (u + 2);
                    expected = plain == element ? 2.0 : 4.0;
                } else if (a == PointType::element && b == PointType::plain) {
                    const std::size_t plain = j - 1;
                    const std::size_t element = i - (u + 2);
                    expected = plain == element ? 2.0 : 4.0;
                } else if (a == PointType::element && b == PointType::element) expected = 2.0;
                else expected = 2.0; // element or plain vs satellite
                CHECK(d == expected);
            }
        }
    }
}

TEST_CASE("closed-form objective values") {
    MaxCoverageInstance mc;
    mc.universe_size = 3;
    mc.subsets = {{0, 1, 2}};
    mc.K = 1;
    mc.W = 3;
    // full cover: g = 0, value 2k + 2(k+1)k + 2k^2 = 6 + 24 + 18
    CHECK(predicted_objective(mc, {0}) == 48.0);

    MaxCoverageInstance partial;
    partial.universe_size = 4;
    partial.subsets = {{0}, {1, 2}};
    partial.K = 2;
    partial.W = 3;
    const double k = 4.0;
    // cover {0}: g = 3
    CHECK(predicted_objective(partial, {0}) == 4.0 * 3.0 + 2.0 * k + 2.0 * (k + 1.0) * k + 2.0 * k * k);
    // empty cover forbidden, oversized too
    CHECK_THROWS_AS(predicted_objective(partial, {}), std::invalid_argument);
    CHECK_THROWS_AS(predicted_objective(partial, {0, 1, 0}), std::invalid_argument);
}

TEST_CASE("evaluator reproduces the closed form on reduced instances") {
    std::size_t datasets = 0, covers_checked = 0;
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        const MaxCoverageInstance mc = random_instance(seed);
        const ReducedInstance reduced = reduce_max_coverage(mc);
        ++datasets;
        for (const auto& cover : feasible_covers(mc)) {
            const double expected = predicted_objective(mc, cover);
            const FeatureSelection sel(cover);
            for (TieMode mode : {TieMode::optimistic, TieMode::pessimistic}) {
                const EvalConfig config{reduced.k, mode, 1e-9};
                const double value = evaluate_selection(reduced.dataset, sel, config).objective;
                CHECK(value == doctest::Approx(expected).epsilon(1e-9));
            }
            ++covers_checked;
        }
    }
    CHECK(datasets == 12);
    CHECK(covers_checked > 30);
}

TEST_CASE("reduced optimum decides the coverage question") {
    for (std::uint64_t seed = 20; seed < 32; ++seed) {
        const MaxCoverageInstance mc = random_instance(seed);
        const ReducedInstance reduced = reduce_max_coverage(mc);
        const EvalConfig config{reduced.k, TieMode::pessimistic, 1e-9};

        const SearchResult best = exact_enumeration(reduced.dataset, reduced.max_selected, config);
        const std::size_t best_covered = tests::solve_max_coverage_exact(mc);

        // yes-instance iff some selection reaches the W-coverage threshold value
        const std::size_t target_uncovered = mc.universe_size - std::min(mc.W, mc.universe_size);
        MaxCoverageInstance threshold = mc; // formula wants g via a cover; compute directly
        const double k = static_cast<double>(mc.universe_size);
        const double g = static_cast<double>(target_uncovered);
        const double threshold_value = 4.0 * g + 2.0 * k + 2.0 * (k + 1.0) * k + 2.0 * k * k;
        (void)threshold;

        const bool yes_instance = best_covered >= mc.W;
        CHECK((best.best_objective <= threshold_value + 1e-9) == yes_instance);
    }
}

TEST_CASE("max coverage json") {
    const char* text = R"({"universe_size": 3, "subsets": [[0, 1], [2]], "K": 1, "W": 2})";
    const MaxCoverageInstance mc = parse_max_coverage_json(text);
    CHECK(mc.universe_size == 3);
    CHECK(mc.subsets.size() == 2);
    CHECK(mc.K == 1);
    CHECK(mc.W == 2);
    CHECK_THROWS(parse_max_coverage_json(R"({"universe_size": 2, "subsets": [[5]], "K": 1})"));
}
