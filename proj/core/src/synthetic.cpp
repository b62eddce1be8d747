#include "exfeat/synthetic.hpp"

#include <cmath>
#include <stdexcept>

#include "exfeat/evaluate.hpp"
#include "exfeat/rng.hpp"

namespace exfeat {

Dataset generate_synthetic_dataset(std::size_t n_points, std::size_t n_features,
                                   std::size_t n_solution_features, std::uint64_t seed) {
    if (n_points < 2) throw std::invalid_argument("need at least two data points");
    if (n_features < 1) throw std::invalid_argument("need at least one feature");
    if (n_solution_features < 1) throw std::invalid_argument("need at least one solution feature");

    Rng rng(derive_seed(seed, 0x5f3759df));
    std::vector<FeatureColumn> columns;
    columns.reserve(n_features);
    for (std::size_t f = 0; f < n_features; ++f) {
        FeatureColumn col;
        col.name = "feat_" + std::to_string(f);
        if (rng.bernoulli(0.25)) {
            col.kind = FeatureKind::categorical;
            col.symbols = {"a", "b", "c"};
            col.values.reserve(n_points);
            for (std::size_t i = 0; i < n_points; ++i)
                col.values.push_back(static_cast<double>(rng.uniform_index(3)));
        } else {
            col.kind = FeatureKind::numeric;
            col.values.reserve(n_points);
            for (std::size_t i = 0; i < n_points; ++i)
                col.values.push_back(std::round(rng.uniform_double(0.0, 10.0) * 100.0) / 100.0);
        }
        columns.push_back(std::move(col));
    }

    std::vector<std::vector<double>> solution_features(n_points, std::vector<double>(n_solution_features));
    for (auto& row : solution_features)
        for (auto& v : row) v = rng.uniform_double();

    return Dataset(std::move(columns), solution_distance_matrix(solution_features));
}

} // namespace exfeat
