#ifndef EXFEAT_TESTS_ORACLES_HPP
#define EXFEAT_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "exfeat/evaluate.hpp"
#include "exfeat/hardness.hpp"
#include "exfeat/pathlab/road_graph.hpp"
#include "exfeat/types.hpp"

namespace exfeat::tests {

// Brute-force per-point contribution: strict sum plus the best over all
// explicit k_bar-subsets of the borderline set. Subset sums are accumulated
// in ascending index order, mirroring the evaluator.
inline double brute_force_contribution(const Dataset& dataset, const NeighborClassification& cls,
                                       TieMode mode) {
    double strict_sum = 0.0;
    for (std::size_t j : cls.strict) strict_sum += dataset.solution_distance(cls.point, j);

    const std::size_t b = cls.borderline.size();
    if (cls.k_bar > b) throw std::logic_error("classification with k_bar > |borderline|");
    if (b > 25) throw std::logic_error("borderline set too large for subset enumeration");

    double best = mode == TieMode::optimistic ? std::numeric_limits<double>::infinity()
                                              : -std::numeric_limits<double>::infinity();
    for (std::uint32_t mask = 0; mask < (1u << b); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcount(mask)) != cls.k_bar) continue;
        double sum = 0.0;
        for (std::size_t t = 0; t < b; ++t)
            if (mask & (1u << t)) sum += dataset.solution_distance(cls.point, cls.borderline[t]);
        if (mode == TieMode::optimistic)
            best = std::min(best, sum);
        else
            best = std::max(best, sum);
    }
    return strict_sum + best;
}

// All simple source-target paths by depth-first search, as edge id sequences.
inline void enumerate_simple_paths_impl(const pathlab::RoadGraph& graph, std::size_t node,
                                        std::vector<bool>& visited, std::vector<std::size_t>& stack,
                                        std::vector<std::vector<std::size_t>>& out) {
    if (node == graph.target()) {
        out.push_back(stack);
        return;
    }
    for (std::size_t eid : graph.out_edges(node)) {
        const std::size_t next = graph.edge(eid).head;
        if (visited[next]) continue;
        visited[next] = true;
        stack.push_back(eid);
        enumerate_simple_paths_impl(graph, next, visited, stack, out);
        stack.pop_back();
        visited[next] = false;
    }
}

inline std::vector<std::vector<std::size_t>> enumerate_simple_paths(const pathlab::RoadGraph& graph) {
    std::vector<bool> visited(graph.n_nodes(), false);
    visited[graph.source()] = true;
    std::vector<std::size_t> stack;
    std::vector<std::vector<std::size_t>> out;
    enumerate_simple_paths_impl(graph, graph.source(), visited, stack, out);
    return out;
}

inline double path_edge_cost(const std::vector<std::size_t>& edges, const std::vector<double>& costs) {
    double sum = 0.0;
    for (std::size_t eid : edges) sum += costs[eid];
    return sum;
}

// Exhaustive Maximum Coverage: the largest number of covered elements over
// all subset choices of size 1..K.
inline std::size_t solve_max_coverage_exact(const MaxCoverageInstance& mc) {
    const std::size_t m = mc.subsets.size();
    if (m > 25) throw std::logic_error("instance too large for exhaustive coverage");
    std::size_t best = 0;
    for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcount(mask)) > mc.K) continue;
        std::vector<std::size_t> cover;
        for (std::size_t j = 0; j < m; ++j)
            if (mask & (1u << j)) cover.push_back(j);
        best = std::max(best, mc.universe_size - uncovered_count(mc, cover));
    }
    return best;
}

// Exact inner optimum of the dualized worst-case model for a fixed
// selection, one data point at a time. With the scale variable alpha capped
// at `alpha_cap`, the per-point value is
//     min_{0 <= a <= cap}  R a + sum of the k largest (w_j - a d_j)
// where d are the selected instance distances, w the solution distances and
// R the sum of the k smallest d. The function is piecewise linear in a, so
// scanning the pairwise crossing points is exact.
struct InnerOptimum {
    double value = 0.0;
    double alpha = 0.0;
};

inline InnerOptimum pessimistic_inner_point(const std::vector<double>& d, const std::vector<double>& w,
                                            std::size_t k, double alpha_cap) {
    const std::size_t n = d.size();
    std::vector<double> sorted_d(d);
    std::sort(sorted_d.begin(), sorted_d.end());
    double budget = 0.0;
    for (std::size_t t = 0; t < k; ++t) budget += sorted_d[t];

    std::vector<double> candidates{0.0, alpha_cap};
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            if (d[a] == d[b]) continue;
            const double crossing = (w[a] - w[b]) / (d[a] - d[b]);
            if (crossing > 0.0 && crossing < alpha_cap) candidates.push_back(crossing);
        }

    InnerOptimum best{std::numeric_limits<double>::infinity(), 0.0};
    std::vector<double> reduced(n);
    for (double a : candidates) {
        for (std::size_t j = 0; j < n; ++j) reduced[j] = w[j] - a * d[j];
        std::sort(reduced.begin(), reduced.end(), std::greater<>());
        double value = budget * a;
        for (std::size_t t = 0; t < k; ++t) value += reduced[t];
        if (value < best.value) best = {value, a};
    }
    return best;
}

} // namespace exfeat::tests

#endif
