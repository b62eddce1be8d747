#include "exfeat/hardness.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "exfeat/evaluate.hpp"

namespace exfeat {

namespace {

void validate(const MaxCoverageInstance& mc) {
    if (mc.universe_size == 0) throw std::invalid_argument("universe must be nonempty");
    if (mc.K == 0) throw std::invalid_argument("subset budget K must be at least 1");
    if (mc.subsets.empty()) throw std::invalid_argument("need at least one subset");
    std::set<std::vector<std::size_t>> seen;
    for (const auto& subset : mc.subsets) {
        for (std::size_t e : subset)
            if (e >= mc.universe_size) throw std::invalid_argument("subset element out of range");
        if (!seen.insert(subset).second) throw std::invalid_argument("duplicate subsets are not allowed");
    }
}

MaxCoverageInstance normalized(MaxCoverageInstance mc) {
    for (auto& subset : mc.subsets) {
        std::sort(subset.begin(), subset.end());
        subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
    }
    validate(mc);
    return mc;
}

} // namespace

MaxCoverageInstance parse_max_coverage_json(const std::string& text) {
    const auto doc = nlohmann::json::parse(text);
    MaxCoverageInstance mc;
    mc.universe_size = doc.at("universe_size").get<std::size_t>();
    mc.subsets = doc.at("subsets").get<std::vector<std::vector<std::size_t>>>();
    mc.K = doc.at("K").get<std::size_t>();
    mc.W = doc.value("W", std::size_t{0});
    return normalized(std::move(mc));
}

MaxCoverageInstance load_max_coverage_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open max coverage file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_max_coverage_json(text);
}

std::size_t uncovered_count(const MaxCoverageInstance& mc, const std::vector<std::size_t>& cover) {
    std::vector<bool> covered(mc.universe_size, false);
    for (std::size_t j : cover) {
        if (j >= mc.subsets.size()) throw std::out_of_range("cover references unknown subset");
        for (std::size_t e : mc.subsets[j]) covered[e] = true;
    }
    std::size_t uncovered = 0;
    for (bool c : covered)
        if (!c) ++uncovered;
    return uncovered;
}

ReducedInstance reduce_max_coverage(const MaxCoverageInstance& raw) {
    const MaxCoverageInstance mc = normalized(raw);
    const std::size_t u = mc.universe_size;
    const std::size_t m = mc.subsets.size();
    const std::size_t n = (u + 2) * (u + 1);

    // element -> subsets containing it
    std::vector<std::vector<std::size_t>> containing(u);
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t e : mc.subsets[j]) containing[e].push_back(j);

    // Point layout: [0] center, [1 .. u+1] plain points, [u+2 .. 2u+1]
    // element points, [2u+2 ..] u*(u+1) element satellites. Feature values
    // are integer numerators over the common denominator 6K, so equal values
    // are bit-identical doubles and every tie is exact.
    const double denom = 6.0 * static_cast<double>(mc.K);
    std::vector<std::vector<std::int64_t>> numerators(n, std::vector<std::int64_t>(m, 0));
    std::vector<std::vector<double>> solution_features(n, std::vector<double>(u + 2, 0.0));

    std::size_t point = 1;
    for (std::size_t i = 0; i < u + 1; ++i, ++point) {
        for (std::size_t f = 0; f < m; ++f) numerators[point][f] = 3; // 1/(2K)
        solution_features[point][i] = 1.0;
        solution_features[point][u + 1] = 1.0;
    }
    for (std::size_t e = 0; e < u; ++e, ++point) {
        for (std::size_t j : containing[e]) numerators[point][j] = static_cast<std::int64_t>(denom);
        solution_features[point][e] = 1.0;
        solution_features[point][u + 1] = 3.0;
    }
    for (std::size_t e = 0; e < u; ++e) {
        for (std::size_t l = 0; l < u + 1; ++l, ++point) {
            for (std::size_t f = 0; f < m; ++f) numerators[point][f] = 2; // 1/(3K)
            for (std::size_t j : containing[e]) numerators[point][j] += static_cast<std::int64_t>(denom);
            solution_features[point][u + 1] = 2.0;
        }
    }

    std::vector<FeatureColumn> columns(m);
    for (std::size_t f = 0; f < m; ++f) {
        columns[f].name = "subset_" + std::to_string(f);
        columns[f].kind = FeatureKind::numeric;
        columns[f].values.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            columns[f].values[i] = static_cast<double>(numerators[i][f]) / denom;
    }

    // L = K, clamped to the feature count so downstream solvers stay valid.
    return ReducedInstance{Dataset(std::move(columns), solution_distance_matrix(solution_features)),
                           std::min(mc.K, m), u};
}

double predicted_objective(const MaxCoverageInstance& mc, const std::vector<std::size_t>& cover) {
    if (cover.empty()) throw std::invalid_argument("cover must select at least one subset");
    std::set<std::size_t> unique(cover.begin(), cover.end());
    if (unique.size() != cover.size()) throw std::invalid_argument("cover contains duplicate subsets");
    if (cover.size() > mc.K) throw std::invalid_argument("cover exceeds the subset budget K");

    const double k = static_cast<double>(mc.universe_size);
    const double g = static_cast<double>(uncovered_count(mc, cover));
    return 2.0 * g + 2.0 * k + 2.0 * (k + 1.0) * k + 2.0 * g + 2.0 * k * k;
}

} // namespace exfeat
