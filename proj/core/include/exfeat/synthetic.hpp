#ifndef EXFEAT_SYNTHETIC_HPP
#define EXFEAT_SYNTHETIC_HPP

#include <cstdint>

#include "exfeat/types.hpp"

namespace exfeat {

/// Reproducible random dataset: roughly one in four columns is categorical
/// (3 symbols), numeric values are uniform on [0, 10) rounded to two decimals
/// so that exact distance ties occur, and the solution distance matrix is the
/// 1-norm of `n_solution_features` uniform solution feature rows. The same
/// seed yields a bit-identical dataset on every platform.
Dataset generate_synthetic_dataset(std::size_t n_points, std::size_t n_features,
                                   std::size_t n_solution_features, std::uint64_t seed);

} // namespace exfeat

#endif
