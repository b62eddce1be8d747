#ifndef EXFEAT_HARDNESS_HPP
#define EXFEAT_HARDNESS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "exfeat/types.hpp"

namespace exfeat {

/// Maximum Coverage input: choose at most K of the m subsets of a
/// universe of `universe_size` elements so that at least W elements are
/// covered. Subsets are normalized (sorted, deduplicated elements) and must
/// be pairwise distinct.
struct MaxCoverageInstance {
    std::size_t universe_size = 0;
    std::vector<std::vector<std::size_t>> subsets; // 0-based element ids
    std::size_t K = 0;
    std::size_t W = 0;
};

MaxCoverageInstance load_max_coverage_json(const std::string& path);
MaxCoverageInstance parse_max_coverage_json(const std::string& text);

struct ReducedInstance {
    Dataset dataset;
    std::size_t max_selected = 0; // L = K
    std::size_t k = 0;            // k = |U|
};

/// Translates a Maximum Coverage instance into a feature selection dataset
/// with N = (|U|+2)(|U|+1) points and p = m features whose selection
/// objective encodes the number of uncovered elements. Feature values are
/// exact multiples of 1/(6K), so all distance ties are exact in floating
/// point and a tie tolerance up to 1/(6K) classifies them correctly.
ReducedInstance reduce_max_coverage(const MaxCoverageInstance& mc);

/// Closed-form objective of the reduced dataset under a selection that picks
/// the subsets in `cover` (1 <= |cover| <= K): with u = universe size and
/// g uncovered elements, the value is 4g + 2u + 2(u+1)u + 2u^2.
double predicted_objective(const MaxCoverageInstance& mc, const std::vector<std::size_t>& cover);

/// Number of universe elements not covered by the given subsets.
std::size_t uncovered_count(const MaxCoverageInstance& mc, const std::vector<std::size_t>& cover);

} // namespace exfeat

#endif
