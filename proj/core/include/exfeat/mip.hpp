#ifndef EXFEAT_MIP_HPP
#define EXFEAT_MIP_HPP

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "exfeat/types.hpp"

namespace exfeat {

enum class VarKind { continuous, binary };

struct MipVariable {
    std::string name;
    VarKind kind = VarKind::continuous;
    double lower = 0.0;
    double upper = std::numeric_limits<double>::infinity();
};

struct LinearTerm {
    std::size_t var = 0;
    double coef = 0.0;
};

enum class RowSense { le, ge, eq, range };

struct MipConstraint {
    std::string name;
    std::vector<LinearTerm> terms;
    RowSense sense = RowSense::le;
    double rhs = 0.0;       // le/ge/eq bound; upper bound for range rows
    double range_lb = 0.0;  // lower bound for range rows
};

enum class MipFormulation { optimistic, pessimistic };

/// Solver-agnostic linear model (minimization). Variables and constraints
/// carry unique names; `start_hint` optionally records a warm-start value per
/// variable index and is exported as comments only.
class MipModel {
public:
    std::string name;
    MipFormulation formulation = MipFormulation::optimistic;
    std::size_t n_points = 0, n_features = 0, k = 0, max_selected = 0;
    double big_m = 0.0;

    std::size_t add_variable(const std::string& var_name, VarKind kind, double lower, double upper);
    void add_constraint(MipConstraint constraint);
    void set_objective(std::vector<LinearTerm> terms) { objective_ = std::move(terms); }

    const std::vector<MipVariable>& variables() const { return variables_; }
    const std::vector<MipConstraint>& constraints() const { return constraints_; }
    const std::vector<LinearTerm>& objective() const { return objective_; }

    std::size_t variable_index(const std::string& var_name) const;
    std::optional<std::size_t> find_variable(const std::string& var_name) const;

    /// Left-hand side of constraint `c` under a full variable assignment.
    double row_activity(std::size_t c, const std::vector<double>& assignment) const;
    double objective_value(const std::vector<double>& assignment) const;

    std::vector<std::pair<std::size_t, double>> start_hint;

private:
    std::vector<MipVariable> variables_;
    std::vector<MipConstraint> constraints_;
    std::vector<LinearTerm> objective_;
    std::map<std::string, std::size_t> index_by_name_;
};

/// Big-M constant: the largest full-feature pairwise instance distance,
/// scaled by (1 + 1e-6); falls back to 1 when every distance is zero. Valid
/// upper bound on the selected instance distance of any selection.
double compute_big_m(const Dataset& dataset);

/// Per-point upper bounds U_i on the dual scale variable of the pessimistic
/// model: max over partners j of solution_distance(i,j) divided by the
/// smallest nonzero featurewise distance between i and j. Partners with all
/// featurewise distances zero are skipped; U_i = 0 if every partner is.
std::vector<double> compute_alpha_bounds(const Dataset& dataset);

// Model shapes (N points, p features, k neighbors, L budget):
//   optimistic   variables: p + N(N-1) binary, N(N-1) + N continuous
//                rows: N neighbor-count + 1 ranged budget + 3 N(N-1)
//   pessimistic  variables: p binary, 2N + 2N(N-1) duals
//                           + pN + pN(N-1) product auxiliaries
//                rows: 1 ranged budget + N(N-1) cover + N scale-sum
//                      + N(N-1) scale-cap + 3(pN + pN(N-1)) envelopes

/// Neighbor-assignment formulation: binary y_ij pick at least k neighbors
/// per point, threshold variables coupled through big-M rows; minimizes the
/// summed solution distances of picked pairs under optimistic tie-breaking.
MipModel build_optimistic_mip(const Dataset& dataset, std::size_t max_selected, std::size_t k,
                              std::optional<double> big_m_override = std::nullopt);

/// Dualized worst-case formulation for pessimistic tie-breaking. Products of
/// the selection binaries with the bounded dual variables are linearized by
/// standard envelope rows using the bounds from compute_alpha_bounds.
MipModel build_pessimistic_mip(const Dataset& dataset, std::size_t max_selected, std::size_t k);

/// Selection read back from a solver assignment: all features whose
/// selection binary exceeds 0.5.
FeatureSelection selection_from_solution(const MipModel& model,
                                         const std::map<std::string, double>& values);

struct CrosscheckReport {
    std::optional<double> mip_objective_claimed;
    double core_objective = 0.0;
    bool match = false;
    double tolerance = 1e-6;
};

/// Re-evaluates a solver-provided selection with the core evaluator and
/// compares against the claimed objective within a relative tolerance.
/// A mismatch is a reported outcome, not an error.
CrosscheckReport crosscheck_solution(const Dataset& dataset, const FeatureSelection& selection,
                                     const EvalConfig& eval_config,
                                     std::optional<double> claimed_objective,
                                     double tolerance = 1e-6);

} // namespace exfeat

#endif
