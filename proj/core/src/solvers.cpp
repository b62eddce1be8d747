#include "exfeat/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "exfeat/evaluate.hpp"
#include "exfeat/rng.hpp"

namespace exfeat {

namespace {

// C(n, k) saturated at `cap` to avoid overflow.
std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        if (result > cap) return cap + 1;
        result = result * (n - k + i) / i;
    }
    return std::min(result, cap + 1);
}

bool next_combination(std::vector<std::size_t>& comb, std::size_t n) {
    const std::size_t k = comb.size();
    for (std::size_t i = k; i-- > 0;) {
        if (comb[i] < n - k + i) {
            ++comb[i];
            for (std::size_t j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
            return true;
        }
    }
    return false;
}

struct SwapMove {
    std::vector<std::size_t> out; // feature ids leaving the selection
    std::vector<std::size_t> in;  // feature ids entering it
};

// Distinct swap moves relative to `selected`/`unselected`, in seeded random
// order. Enumerates exhaustively when the move space fits the budget,
// otherwise samples without replacement by rejection.
std::vector<SwapMove> sample_moves(const std::vector<std::size_t>& selected,
                                   const std::vector<std::size_t>& unselected,
                                   std::size_t swap_size, std::size_t budget, Rng& rng) {
    std::vector<SwapMove> moves;
    const std::uint64_t space =
        binomial_capped(selected.size(), swap_size, budget) * binomial_capped(unselected.size(), swap_size, budget);
    if (space <= budget) {
        std::vector<std::size_t> out_pos(swap_size), in_pos(swap_size);
        for (std::size_t i = 0; i < swap_size; ++i) out_pos[i] = i;
        do {
            for (std::size_t i = 0; i < swap_size; ++i) in_pos[i] = i;
            do {
                SwapMove move;
                for (std::size_t i : out_pos) move.out.push_back(selected[i]);
                for (std::size_t i : in_pos) move.in.push_back(unselected[i]);
                moves.push_back(std::move(move));
            } while (next_combination(in_pos, unselected.size()));
        } while (next_combination(out_pos, selected.size()));
        rng.shuffle(moves);
        return moves;
    }

    std::set<std::vector<std::size_t>> seen;
    std::size_t attempts = 0;
    const std::size_t max_attempts = budget * 20;
    while (moves.size() < budget && attempts < max_attempts) {
        ++attempts;
        SwapMove move;
        for (std::size_t i : rng.sample_without_replacement(selected.size(), swap_size))
            move.out.push_back(selected[i]);
        for (std::size_t i : rng.sample_without_replacement(unselected.size(), swap_size))
            move.in.push_back(unselected[i]);
        std::vector<std::size_t> key(move.out);
        key.insert(key.end(), move.in.begin(), move.in.end());
        if (seen.insert(std::move(key)).second) moves.push_back(std::move(move));
    }
    return moves;
}

bool lex_less(const FeatureSelection& a, const FeatureSelection& b) {
    return std::lexicographical_compare(a.indices.begin(), a.indices.end(), b.indices.begin(),
                                        b.indices.end());
}

} // namespace

SearchResult k_opt_search(const Dataset& dataset, const KOptConfig& config, const EvalConfig& eval_config) {
    const std::size_t p = dataset.n_features();
    const std::size_t L = config.selection_size;
    const std::size_t K = config.swap_size;
    if (L == 0 || L > p) throw std::invalid_argument("selection size must satisfy 1 <= L <= p");
    if (K == 0 || K > std::min(L, p - L))
        throw std::invalid_argument("swap size must satisfy 1 <= K <= min(L, p - L)");
    if (config.start_candidates == 0 || config.restarts == 0 || config.max_sampled_moves == 0 ||
        config.improving_moves_cutoff == 0)
        throw std::invalid_argument("all search counters must be at least 1");

    SearchResult result;
    bool have_best = false;

    for (std::size_t restart = 0; restart < config.restarts; ++restart) {
        Rng rng(derive_seed(config.seed, restart));

        FeatureSelection current;
        double current_obj = 0.0;
        for (std::size_t c = 0; c < config.start_candidates; ++c) {
            FeatureSelection cand(rng.sample_without_replacement(p, L));
            const double obj = evaluate_selection(dataset, cand, eval_config).objective;
            ++result.evaluations;
            if (c == 0 || obj < current_obj) {
                current = std::move(cand);
                current_obj = obj;
            }
        }
        result.trace.push_back({restart, 0, current_obj});

        std::vector<std::size_t> unselected;
        for (std::size_t iteration = 1;; ++iteration) {
            unselected.clear();
            for (std::size_t f = 0; f < p; ++f)
                if (!current.contains(f)) unselected.push_back(f);
            const std::vector<SwapMove> pool =
                sample_moves(current.indices, unselected, K, config.max_sampled_moves, rng);

            std::size_t improvements = 0;
            for (const SwapMove& move : pool) {
                bool applicable = true;
                for (std::size_t f : move.out) applicable = applicable && current.contains(f);
                for (std::size_t f : move.in) applicable = applicable && !current.contains(f);
                if (!applicable) continue; // stale after an accepted move in this pass

                std::vector<std::size_t> candidate_idx;
                candidate_idx.reserve(L);
                for (std::size_t f : current.indices)
                    if (std::find(move.out.begin(), move.out.end(), f) == move.out.end())
                        candidate_idx.push_back(f);
                candidate_idx.insert(candidate_idx.end(), move.in.begin(), move.in.end());
                FeatureSelection candidate(std::move(candidate_idx));

                const double obj = evaluate_selection(dataset, candidate, eval_config).objective;
                ++result.evaluations;
                if (obj < current_obj) {
                    current = std::move(candidate);
                    current_obj = obj;
                    ++improvements;
                    result.trace.push_back({restart, iteration, current_obj});
                    if (improvements >= config.improving_moves_cutoff) break;
                }
            }
            if (improvements == 0) break;
        }

        if (!have_best || current_obj < result.best_objective) {
            result.best_selection = current;
            result.best_objective = current_obj;
            have_best = true;
        }
    }
    return result;
}

SearchResult exact_enumeration(const Dataset& dataset, std::size_t max_size, const EvalConfig& eval_config,
                               std::uint64_t budget) {
    const std::size_t p = dataset.n_features();
    if (max_size == 0 || max_size > p) throw std::invalid_argument("max selection size must satisfy 1 <= L <= p");

    std::uint64_t total = 0;
    for (std::size_t l = 1; l <= max_size; ++l) {
        total += binomial_capped(p, l, budget);
        if (total > budget)
            throw std::runtime_error("enumeration budget exceeded: more than " + std::to_string(budget) +
                                     " candidate selections");
    }

    SearchResult result;
    bool have_best = false;
    for (std::size_t l = 1; l <= max_size; ++l) {
        std::vector<std::size_t> comb(l);
        for (std::size_t i = 0; i < l; ++i) comb[i] = i;
        do {
            FeatureSelection sel(comb);
            const double obj = evaluate_selection(dataset, sel, eval_config).objective;
            ++result.evaluations;
            if (!have_best || obj < result.best_objective ||
                (obj == result.best_objective && lex_less(sel, result.best_selection))) {
                result.best_selection = std::move(sel);
                result.best_objective = obj;
                have_best = true;
            }
        } while (next_combination(comb, p));
    }
    result.trace.push_back({0, 0, result.best_objective});
    return result;
}

ObjectiveStats random_selection_baseline(const Dataset& dataset, std::size_t selection_size,
                                         std::size_t repeats, const EvalConfig& eval_config,
                                         std::uint64_t seed) {
    const std::size_t p = dataset.n_features();
    if (selection_size == 0 || selection_size > p)
        throw std::invalid_argument("selection size must satisfy 1 <= L <= p");
    if (repeats == 0) throw std::invalid_argument("need at least one repeat");

    Rng rng(derive_seed(seed, 0xba5e11e));
    ObjectiveStats stats;
    stats.repeats = repeats;
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t r = 0; r < repeats; ++r) {
        FeatureSelection sel(rng.sample_without_replacement(p, selection_size));
        const double obj = evaluate_selection(dataset, sel, eval_config).objective;
        sum += obj;
        sum_sq += obj * obj;
        if (r == 0) {
            stats.min = stats.max = obj;
        } else {
            stats.min = std::min(stats.min, obj);
            stats.max = std::max(stats.max, obj);
        }
    }
    stats.mean = sum / static_cast<double>(repeats);
    const double var = std::max(0.0, sum_sq / static_cast<double>(repeats) - stats.mean * stats.mean);
    stats.stddev = std::sqrt(var);
    return stats;
}

} // namespace exfeat
