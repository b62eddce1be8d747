#include "exfeat/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace exfeat {

Dataset::Dataset(std::vector<FeatureColumn> features,
                 std::vector<double> solution_distance_row_major,
                 bool normalize_features)
    : features_(std::move(features)), solution_distance_(std::move(solution_distance_row_major)) {
    if (features_.empty()) throw std::invalid_argument("dataset needs at least one feature column");
    n_points_ = features_.front().values.size();
    if (n_points_ < 2) throw std::invalid_argument("dataset needs at least two data points");
    for (const auto& col : features_) {
        if (col.values.size() != n_points_)
            throw std::invalid_argument("feature column '" + col.name + "' has wrong length");
    }
    if (solution_distance_.size() != n_points_ * n_points_)
        throw std::invalid_argument("solution distance matrix has wrong shape");
    for (std::size_t i = 0; i < n_points_; ++i) {
        if (solution_distance_[i * n_points_ + i] != 0.0)
            throw std::invalid_argument("solution distance matrix has nonzero diagonal");
        for (std::size_t j = 0; j < n_points_; ++j) {
            const double v = solution_distance_[i * n_points_ + j];
            if (!(v >= 0.0)) throw std::invalid_argument("solution distance matrix has negative or NaN entry");
            const double w = solution_distance_[j * n_points_ + i];
            if (std::abs(v - w) > 1e-9 * std::max(1.0, std::abs(v)))
                throw std::invalid_argument("solution distance matrix is not symmetric");
        }
    }
    if (normalize_features) {
        for (auto& col : features_) {
            if (col.kind != FeatureKind::numeric) continue;
            const auto [lo_it, hi_it] = std::minmax_element(col.values.begin(), col.values.end());
            const double lo = *lo_it, span = *hi_it - *lo_it;
            for (auto& v : col.values) v = span > 0.0 ? (v - lo) / span : 0.0;
        }
    }
}

FeatureSelection::FeatureSelection(std::vector<std::size_t> idx) : indices(std::move(idx)) {
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
}

bool FeatureSelection::contains(std::size_t f) const {
    return std::binary_search(indices.begin(), indices.end(), f);
}

std::string FeatureSelection::to_string() const {
    std::ostringstream out;
    out << '{';
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (i) out << ',';
        out << indices[i];
    }
    out << '}';
    return out.str();
}

double featurewise_distance(const Dataset& dataset, std::size_t i, std::size_t j, std::size_t f) {
    if (i >= dataset.n_points() || j >= dataset.n_points())
        throw std::out_of_range("point index out of range");
    if (f >= dataset.n_features()) throw std::out_of_range("feature index out of range");
    const FeatureColumn& col = dataset.feature(f);
    if (col.kind == FeatureKind::categorical) return col.values[i] == col.values[j] ? 0.0 : 1.0;
    return std::abs(col.values[i] - col.values[j]);
}

double selected_instance_distance(const Dataset& dataset, std::size_t i, std::size_t j,
                                  const FeatureSelection& selection) {
    if (selection.empty()) throw std::invalid_argument("empty feature selection");
    double sum = 0.0;
    for (std::size_t f : selection.indices) sum += featurewise_distance(dataset, i, j, f);
    return sum;
}

std::vector<double> selected_distances_from(const Dataset& dataset, std::size_t i,
                                            const FeatureSelection& selection) {
    if (selection.empty()) throw std::invalid_argument("empty feature selection");
    if (i >= dataset.n_points()) throw std::out_of_range("point index out of range");
    const std::size_t n = dataset.n_points();
    std::vector<double> dist(n, 0.0);
    for (std::size_t f : selection.indices) {
        if (f >= dataset.n_features()) throw std::out_of_range("feature index out of range");
        const FeatureColumn& col = dataset.feature(f);
        const double vi = col.values[i];
        if (col.kind == FeatureKind::categorical) {
            for (std::size_t j = 0; j < n; ++j)
                if (col.values[j] != vi) dist[j] += 1.0;
        } else {
            for (std::size_t j = 0; j < n; ++j) dist[j] += std::abs(col.values[j] - vi);
        }
    }
    dist[i] = 0.0;
    return dist;
}

std::vector<double> solution_distance_matrix(const std::vector<std::vector<double>>& solution_features) {
    const std::size_t n = solution_features.size();
    if (n == 0) throw std::invalid_argument("no solution feature rows");
    const std::size_t q = solution_features.front().size();
    if (q == 0) throw std::invalid_argument("solution feature rows are empty");
    for (const auto& row : solution_features)
        if (row.size() != q) throw std::invalid_argument("ragged solution feature rows");

    std::vector<double> matrix(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double d = 0.0;
            for (std::size_t m = 0; m < q; ++m) d += std::abs(solution_features[i][m] - solution_features[j][m]);
            matrix[i * n + j] = d;
            matrix[j * n + i] = d;
        }
    }
    return matrix;
}

NeighborClassification classify_neighbors(const Dataset& dataset, std::size_t i,
                                          const FeatureSelection& selection, const EvalConfig& config) {
    const std::size_t n = dataset.n_points();
    if (config.k == 0 || config.k > n - 1)
        throw std::invalid_argument("neighborhood size k must satisfy 1 <= k <= N-1");
    const std::vector<double> dist = selected_distances_from(dataset, i, selection);

    std::vector<double> others;
    others.reserve(n - 1);
    for (std::size_t j = 0; j < n; ++j)
        if (j != i) others.push_back(dist[j]);
    std::nth_element(others.begin(), others.begin() + (config.k - 1), others.end());
    const double epsilon = others[config.k - 1];

    NeighborClassification out;
    out.point = i;
    out.epsilon = epsilon;
    const double tol = config.tie_tolerance;
    for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        if (dist[j] < epsilon - tol)
            out.strict.push_back(j);
        else if (std::abs(dist[j] - epsilon) <= tol)
            out.borderline.push_back(j);
    }
    out.k_bar = config.k - out.strict.size();
    return out;
}

EvalResult evaluate_selection(const Dataset& dataset, const FeatureSelection& selection,
                              const EvalConfig& config) {
    const std::size_t n = dataset.n_points();
    EvalResult result;
    result.per_point.resize(n);

    std::vector<std::pair<double, std::size_t>> ranked;
    for (std::size_t i = 0; i < n; ++i) {
        NeighborClassification cls = classify_neighbors(dataset, i, selection, config);

        ranked.clear();
        ranked.reserve(cls.borderline.size());
        for (std::size_t j : cls.borderline) ranked.emplace_back(dataset.solution_distance(i, j), j);
        if (config.mode == TieMode::optimistic) {
            std::sort(ranked.begin(), ranked.end());
        } else {
            std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
                if (a.first != b.first) return a.first > b.first;
                return a.second < b.second;
            });
        }

        PointContribution& pc = result.per_point[i];
        pc.neighbors = cls.strict;
        for (std::size_t t = 0; t < cls.k_bar; ++t) pc.neighbors.push_back(ranked[t].second);
        std::sort(pc.neighbors.begin(), pc.neighbors.end());

        double contribution = 0.0;
        for (std::size_t j : pc.neighbors) contribution += dataset.solution_distance(i, j);
        pc.contribution = contribution;
        result.objective += contribution;
    }
    return result;
}

} // namespace exfeat
