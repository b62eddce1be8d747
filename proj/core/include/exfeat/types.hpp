#ifndef EXFEAT_TYPES_HPP
#define EXFEAT_TYPES_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace exfeat {

enum class FeatureKind { numeric, categorical };

/// One instance feature observed on all N data points. Categorical columns
/// store symbol ids in `values` (exactly representable small integers) and
/// keep the symbol names in `symbols`.
struct FeatureColumn {
    std::string name;
    FeatureKind kind = FeatureKind::numeric;
    std::vector<double> values;
    std::vector<std::string> symbols; // categorical only, indexed by symbol id

    bool is_constant() const {
        for (std::size_t i = 1; i < values.size(); ++i)
            if (values[i] != values[0]) return false;
        return true;
    }
};

/// Immutable collection of N historic data points: a feature table (p columns
/// of length N) plus the N x N matrix of pairwise solution distances.
/// Construction validates the invariants (N >= 2, p >= 1, matrix symmetric
/// with zero diagonal and nonnegative entries); all reads are thread-safe.
class Dataset {
public:
    Dataset(std::vector<FeatureColumn> features,
            std::vector<double> solution_distance_row_major,
            bool normalize_features = false);

    std::size_t n_points() const { return n_points_; }
    std::size_t n_features() const { return features_.size(); }

    const FeatureColumn& feature(std::size_t f) const { return features_.at(f); }
    const std::vector<FeatureColumn>& features() const { return features_; }

    double solution_distance(std::size_t i, std::size_t j) const {
        return solution_distance_[i * n_points_ + j];
    }
    const std::vector<double>& solution_distance_matrix() const { return solution_distance_; }

private:
    std::size_t n_points_ = 0;
    std::vector<FeatureColumn> features_;
    std::vector<double> solution_distance_;
};

/// Subset of feature indices, kept sorted and unique. Size constraints
/// (1 <= size <= L) are enforced by the operations that take a budget.
struct FeatureSelection {
    std::vector<std::size_t> indices;

    FeatureSelection() = default;
    explicit FeatureSelection(std::vector<std::size_t> idx);

    std::size_t size() const { return indices.size(); }
    bool empty() const { return indices.empty(); }
    bool contains(std::size_t f) const;

    bool operator==(const FeatureSelection& other) const { return indices == other.indices; }
    std::string to_string() const;
};

enum class TieMode { optimistic, pessimistic };

/// Neighborhood evaluation parameters. `tie_tolerance` is an absolute
/// tolerance: distances within it of the k-th smallest count as borderline.
struct EvalConfig {
    std::size_t k = 1;
    TieMode mode = TieMode::pessimistic;
    double tie_tolerance = 1e-9;
};

/// Neighbor classification of one data point under a feature selection:
/// strict neighbors are closer than the threshold, borderline neighbors sit
/// on it, and k_bar = k - |strict| of them still have to be chosen.
struct NeighborClassification {
    std::size_t point = 0;
    double epsilon = 0.0;
    std::vector<std::size_t> strict;
    std::vector<std::size_t> borderline;
    std::size_t k_bar = 0;
};

struct PointContribution {
    double contribution = 0.0;
    std::vector<std::size_t> neighbors; // exactly k indices, ascending
};

struct EvalResult {
    double objective = 0.0;
    std::vector<PointContribution> per_point;
};

struct ObjectiveStats {
    double mean = 0.0;
    double stddev = 0.0; // population standard deviation
    double min = 0.0;
    double max = 0.0;
    std::size_t repeats = 0;
};

} // namespace exfeat

#endif
