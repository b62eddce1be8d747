#ifndef EXFEAT_SOLVERS_HPP
#define EXFEAT_SOLVERS_HPP

#include <cstdint>
#include <vector>

#include "exfeat/types.hpp"

namespace exfeat {

/// Parameters of the multi-start swap search. One move exchanges `swap_size`
/// selected features against the same number of unselected ones, so the
/// selection size stays at exactly `selection_size`.
struct KOptConfig {
    std::size_t swap_size = 1;              // K
    std::size_t max_sampled_moves = 1000;   // distinct moves sampled per pass
    std::size_t improving_moves_cutoff = 10; // improvements before a pass is cut short
    std::size_t start_candidates = 10;      // random starts evaluated per restart
    std::size_t restarts = 5;
    std::uint64_t seed = 0;
    std::size_t selection_size = 1;         // L
};

struct SearchTracePoint {
    std::size_t restart = 0;
    std::size_t iteration = 0; // 0 is the chosen start candidate
    double objective = 0.0;
};

struct SearchResult {
    FeatureSelection best_selection;
    double best_objective = 0.0;
    std::vector<SearchTracePoint> trace;
    std::uint64_t evaluations = 0;
};

/// Multi-start first-improvement swap search. Per restart (sub-seeded with
/// derive_seed(seed, restart)) the best of `start_candidates` random size-L
/// selections is improved by passes over a freshly sampled pool of distinct
/// swap moves; each improving move is accepted immediately, a pass ends early
/// after `improving_moves_cutoff` improvements, and the restart stops when a
/// full pass finds no improvement. Results are deterministic per seed.
SearchResult k_opt_search(const Dataset& dataset, const KOptConfig& config, const EvalConfig& eval_config);

/// Enumerates every selection with 1 <= size <= max_size and returns the
/// minimizer; ties go to the lexicographically smallest index set. Throws if
/// the number of candidate selections exceeds `budget`.
SearchResult exact_enumeration(const Dataset& dataset, std::size_t max_size, const EvalConfig& eval_config,
                               std::uint64_t budget = 1000000);

/// Objective statistics over `repeats` uniformly drawn size-L selections
/// (draws are independent; repeated subsets are possible).
ObjectiveStats random_selection_baseline(const Dataset& dataset, std::size_t selection_size,
                                         std::size_t repeats, const EvalConfig& eval_config,
                                         std::uint64_t seed);

} // namespace exfeat

#endif
