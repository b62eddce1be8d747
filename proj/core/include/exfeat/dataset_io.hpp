#ifndef EXFEAT_DATASET_IO_HPP
#define EXFEAT_DATASET_IO_HPP

#include <iosfwd>
#include <string>

#include "exfeat/types.hpp"

namespace exfeat {

// Dataset JSON schema:
//   {
//     "n_points": N,
//     "features": [ {"name": "...", "kind": "numeric"|"categorical",
//                    "values": [...numbers or symbol strings...]}, ... ],
//     "solution_distance": [[...], ...]      N x N matrix
//   }
// Instead of "solution_distance" a file may carry "solution_features"
// (N rows of q numbers); the distance matrix is then computed as pairwise
// 1-norms. Categorical values may be strings (interned per column) or
// nonnegative integer symbol ids.

Dataset load_dataset_json(const std::string& path, bool normalize_features = false);
Dataset parse_dataset_json(const std::string& text, bool normalize_features = false);

void save_dataset_json(const Dataset& dataset, const std::string& path);
std::string dataset_to_json(const Dataset& dataset);

} // namespace exfeat

#endif
