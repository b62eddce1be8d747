#ifndef EXFEAT_EVALUATE_HPP
#define EXFEAT_EVALUATE_HPP

#include <cstddef>
#include <vector>

#include "exfeat/types.hpp"

namespace exfeat {

/// Distance between points i and j in a single feature: absolute difference
/// for numeric columns, 0/1 indicator for categorical ones.
double featurewise_distance(const Dataset& dataset, std::size_t i, std::size_t j, std::size_t f);

/// 1-norm instance distance restricted to the selected features.
double selected_instance_distance(const Dataset& dataset, std::size_t i, std::size_t j,
                                  const FeatureSelection& selection);

/// All selected distances from point i to every other point (entry i is 0).
std::vector<double> selected_distances_from(const Dataset& dataset, std::size_t i,
                                            const FeatureSelection& selection);

/// Pairwise 1-norm distances of N solution feature rows, returned as an
/// N x N row-major matrix (symmetric, zero diagonal).
std::vector<double> solution_distance_matrix(const std::vector<std::vector<double>>& solution_features);

/// Classify the neighbors of point i: epsilon is the k-th smallest selected
/// distance to another point, strict neighbors fall below epsilon minus the
/// tie tolerance, borderline neighbors lie within it. The result always
/// satisfies |strict| < k <= |strict| + |borderline|.
NeighborClassification classify_neighbors(const Dataset& dataset, std::size_t i,
                                          const FeatureSelection& selection, const EvalConfig& config);

/// Objective of one feature selection: for every point, the solution
/// distances to its strict neighbors plus the k_bar smallest (optimistic) or
/// largest (pessimistic) solution distances among the borderline neighbors.
/// Ties on equal solution distance are broken towards the smallest index, so
/// the result is deterministic.
EvalResult evaluate_selection(const Dataset& dataset, const FeatureSelection& selection,
                              const EvalConfig& config);

} // namespace exfeat

#endif
