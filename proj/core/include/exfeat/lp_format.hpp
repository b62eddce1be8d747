#ifndef EXFEAT_LP_FORMAT_HPP
#define EXFEAT_LP_FORMAT_HPP

#include <map>
#include <optional>
#include <string>

#include "exfeat/mip.hpp"

namespace exfeat {

/// Serializes the model in CPLEX LP text format (Minimize / Subject To /
/// Bounds / Binaries / End). Ranged rows are split into _lo / _hi pairs,
/// free variables are declared free, and a start hint, if present, is
/// emitted as leading comment lines. Output is byte-identical for equal
/// models: variables and rows keep their model order and numbers are
/// printed with round-trip precision.
std::string to_lp_string(const MipModel& model);

void write_exchange_file(const MipModel& model, const std::string& path);

struct SolutionFile {
    std::map<std::string, double> values;
    std::optional<double> objective;
};

/// Parses a solver solution listing: one `name value` (or `name=value`) pair
/// per line, '#' and '\' comments ignored. A line `objective <value>` (or
/// `=obj=` prefix) sets the claimed objective.
SolutionFile read_solution_file(const std::string& path);
SolutionFile parse_solution_text(const std::string& text);

} // namespace exfeat

#endif
