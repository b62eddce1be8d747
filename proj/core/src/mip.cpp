#include "exfeat/mip.hpp"

#include <cmath>
#include <stdexcept>

#include "exfeat/evaluate.hpp"

namespace exfeat {

std::size_t MipModel::add_variable(const std::string& var_name, VarKind kind, double lower, double upper) {
    if (index_by_name_.count(var_name)) throw std::invalid_argument("duplicate variable name: " + var_name);
    variables_.push_back({var_name, kind, lower, upper});
    index_by_name_[var_name] = variables_.size() - 1;
    return variables_.size() - 1;
}

void MipModel::add_constraint(MipConstraint constraint) {
    for (const LinearTerm& t : constraint.terms)
        if (t.var >= variables_.size())
            throw std::invalid_argument("constraint '" + constraint.name + "' references unknown variable");
    constraints_.push_back(std::move(constraint));
}

std::size_t MipModel::variable_index(const std::string& var_name) const {
    auto it = index_by_name_.find(var_name);
    if (it == index_by_name_.end()) throw std::out_of_range("unknown variable: " + var_name);
    return it->second;
}

std::optional<std::size_t> MipModel::find_variable(const std::string& var_name) const {
    auto it = index_by_name_.find(var_name);
    if (it == index_by_name_.end()) return std::nullopt;
    return it->second;
}

double MipModel::row_activity(std::size_t c, const std::vector<double>& assignment) const {
    double sum = 0.0;
    for (const LinearTerm& t : constraints_.at(c).terms) sum += t.coef * assignment.at(t.var);
    return sum;
}

double MipModel::objective_value(const std::vector<double>& assignment) const {
    double sum = 0.0;
    for (const LinearTerm& t : objective_) sum += t.coef * assignment.at(t.var);
    return sum;
}

double compute_big_m(const Dataset& dataset) {
    const std::size_t n = dataset.n_points();
    double max_dist = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double d = 0.0;
            for (std::size_t f = 0; f < dataset.n_features(); ++f)
                d += featurewise_distance(dataset, i, j, f);
            max_dist = std::max(max_dist, d);
        }
    }
    if (max_dist == 0.0) return 1.0;
    return max_dist * (1.0 + 1e-6);
}

std::vector<double> compute_alpha_bounds(const Dataset& dataset) {
    const std::size_t n = dataset.n_points();
    const std::size_t p = dataset.n_features();
    std::vector<double> bounds(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double u = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            double min_nonzero = std::numeric_limits<double>::infinity();
            for (std::size_t f = 0; f < p; ++f) {
                const double d = featurewise_distance(dataset, i, j, f);
                if (d > 0.0) min_nonzero = std::min(min_nonzero, d);
            }
            if (!std::isfinite(min_nonzero)) continue; // indistinguishable pair, unconstrained
            u = std::max(u, dataset.solution_distance(i, j) / min_nonzero);
        }
        bounds[i] = u;
    }
    return bounds;
}

namespace {

std::string idx2(const char* prefix, std::size_t a, std::size_t b) {
    return std::string(prefix) + "_" + std::to_string(a) + "_" + std::to_string(b);
}

std::string idx3(const char* prefix, std::size_t a, std::size_t b, std::size_t c) {
    return std::string(prefix) + "_" + std::to_string(a) + "_" + std::to_string(b) + "_" + std::to_string(c);
}

void check_problem_sizes(const Dataset& dataset, std::size_t max_selected, std::size_t k) {
    if (k == 0 || k > dataset.n_points() - 1)
        throw std::invalid_argument("neighborhood size k must satisfy 1 <= k <= N-1");
    if (max_selected == 0 || max_selected > dataset.n_features())
        throw std::invalid_argument("selection budget must satisfy 1 <= L <= p");
}

void add_budget_row(MipModel& model, const std::vector<std::size_t>& b_vars, std::size_t max_selected) {
    MipConstraint row;
    row.name = "feat_budget";
    row.sense = RowSense::range;
    row.range_lb = 1.0;
    row.rhs = static_cast<double>(max_selected);
    for (std::size_t v : b_vars) row.terms.push_back({v, 1.0});
    model.add_constraint(std::move(row));
}

} // namespace

MipModel build_optimistic_mip(const Dataset& dataset, std::size_t max_selected, std::size_t k,
                              std::optional<double> big_m_override) {
    check_problem_sizes(dataset, max_selected, k);
    const std::size_t n = dataset.n_points();
    const std::size_t p = dataset.n_features();
    const double big_m = big_m_override.value_or(compute_big_m(dataset));

    MipModel model;
    model.name = "optimistic_selection";
    model.formulation = MipFormulation::optimistic;
    model.n_points = n;
    model.n_features = p;
    model.k = k;
    model.max_selected = max_selected;
    model.big_m = big_m;

    std::vector<std::size_t> b(p);
    for (std::size_t f = 0; f < p; ++f) b[f] = model.add_variable("b_" + std::to_string(f), VarKind::binary, 0.0, 1.0);

    std::vector<std::size_t> y(n * n, 0), d(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            y[i * n + j] = model.add_variable(idx2("y", i, j), VarKind::binary, 0.0, 1.0);
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            d[i * n + j] = model.add_variable(idx2("d", i, j), VarKind::continuous, 0.0,
                                              std::numeric_limits<double>::infinity());
        }
    std::vector<std::size_t> eps(n);
    for (std::size_t i = 0; i < n; ++i)
        eps[i] = model.add_variable("eps_" + std::to_string(i), VarKind::continuous, 0.0,
                                    std::numeric_limits<double>::infinity());

    std::vector<LinearTerm> objective;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            objective.push_back({y[i * n + j], dataset.solution_distance(i, j)});
        }
    model.set_objective(std::move(objective));

    // at least k picked neighbors per point
    for (std::size_t i = 0; i < n; ++i) {
        MipConstraint row;
        row.name = "neighbor_count_" + std::to_string(i);
        row.sense = RowSense::ge;
        row.rhs = static_cast<double>(k);
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            row.terms.push_back({y[i * n + j], 1.0});
        }
        model.add_constraint(std::move(row));
    }

    add_budget_row(model, b, max_selected);

    // d_ij equals the selected instance distance
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            MipConstraint row;
            row.name = idx2("dist", i, j);
            row.sense = RowSense::eq;
            row.rhs = 0.0;
            row.terms.push_back({d[i * n + j], 1.0});
            for (std::size_t f = 0; f < p; ++f) {
                const double coef = featurewise_distance(dataset, i, j, f);
                if (coef != 0.0) row.terms.push_back({b[f], -coef});
            }
            model.add_constraint(std::move(row));
        }

    // picked pairs stay below the threshold: d_ij - eps_i + M y_ij <= M
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            MipConstraint row;
            row.name = idx2("near", i, j);
            row.sense = RowSense::le;
            row.rhs = big_m;
            row.terms.push_back({d[i * n + j], 1.0});
            row.terms.push_back({eps[i], -1.0});
            row.terms.push_back({y[i * n + j], big_m});
            model.add_constraint(std::move(row));
        }

    // unpicked pairs stay above it: eps_i - d_ij - M y_ij <= 0
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            MipConstraint row;
            row.name = idx2("far", i, j);
            row.sense = RowSense::le;
            row.rhs = 0.0;
            row.terms.push_back({eps[i], 1.0});
            row.terms.push_back({d[i * n + j], -1.0});
            row.terms.push_back({y[i * n + j], -big_m});
            model.add_constraint(std::move(row));
        }

    return model;
}

MipModel build_pessimistic_mip(const Dataset& dataset, std::size_t max_selected, std::size_t k) {
    check_problem_sizes(dataset, max_selected, k);
    const std::size_t n = dataset.n_points();
    const std::size_t p = dataset.n_features();
    const std::vector<double> alpha_bound = compute_alpha_bounds(dataset);

    MipModel model;
    model.name = "pessimistic_selection";
    model.formulation = MipFormulation::pessimistic;
    model.n_points = n;
    model.n_features = p;
    model.k = k;
    model.max_selected = max_selected;
    model.big_m = 0.0;

    const double inf = std::numeric_limits<double>::infinity();

    std::vector<std::size_t> b(p);
    for (std::size_t f = 0; f < p; ++f) b[f] = model.add_variable("b_" + std::to_string(f), VarKind::binary, 0.0, 1.0);

    std::vector<std::size_t> alpha(n), gamma(n);
    std::vector<std::size_t> beta(n * n, 0), delta(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
        alpha[i] = model.add_variable("alpha_" + std::to_string(i), VarKind::continuous, 0.0, alpha_bound[i]);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            beta[i * n + j] = model.add_variable(idx2("beta", i, j), VarKind::continuous, 0.0, alpha_bound[i]);
        }
    // gamma is the multiplier of the exact-cardinality condition and is free
    for (std::size_t i = 0; i < n; ++i)
        gamma[i] = model.add_variable("gamma_" + std::to_string(i), VarKind::continuous, -inf, inf);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            delta[i * n + j] = model.add_variable(idx2("delta", i, j), VarKind::continuous, 0.0, inf);
        }

    // product auxiliaries: pa_f_i = b_f * alpha_i, pb_f_i_j = b_f * beta_ij
    std::vector<std::size_t> pa(p * n), pb(p * n * n, 0);
    for (std::size_t f = 0; f < p; ++f)
        for (std::size_t i = 0; i < n; ++i)
            pa[f * n + i] = model.add_variable(idx2("pa", f, i), VarKind::continuous, 0.0, alpha_bound[i]);
    for (std::size_t f = 0; f < p; ++f)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                pb[(f * n + i) * n + j] =
                    model.add_variable(idx3("pb", f, i, j), VarKind::continuous, 0.0, alpha_bound[i]);
            }

    // objective: sum_f d_f(i,j) pb_f_i_j + k gamma_i + delta_ij
    std::vector<LinearTerm> objective;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            for (std::size_t f = 0; f < p; ++f) {
                const double coef = featurewise_distance(dataset, i, j, f);
                if (coef != 0.0) objective.push_back({pb[(f * n + i) * n + j], coef});
            }
        }
    for (std::size_t i = 0; i < n; ++i) objective.push_back({gamma[i], static_cast<double>(k)});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            objective.push_back({delta[i * n + j], 1.0});
        }
    model.set_objective(std::move(objective));

    add_budget_row(model, b, max_selected);

    // cover rows: sum_f d_f(i,j) pa_f_i + gamma_i + delta_ij >= d_X(i,j)
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            MipConstraint row;
            row.name = idx2("cover", i, j);
            row.sense = RowSense::ge;
            row.rhs = dataset.solution_distance(i, j);
            for (std::size_t f = 0; f < p; ++f) {
                const double coef = featurewise_distance(dataset, i, j, f);
                if (coef != 0.0) row.terms.push_back({pa[f * n + i], coef});
            }
            row.terms.push_back({gamma[i], 1.0});
            row.terms.push_back({delta[i * n + j], 1.0});
            model.add_constraint(std::move(row));
        }

    // sum_j beta_ij >= k alpha_i
    for (std::size_t i = 0; i < n; ++i) {
        MipConstraint row;
        row.name = "scale_sum_" + std::to_string(i);
        row.sense = RowSense::ge;
        row.rhs = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            row.terms.push_back({beta[i * n + j], 1.0});
        }
        row.terms.push_back({alpha[i], -static_cast<double>(k)});
        model.add_constraint(std::move(row));
    }

    // alpha_i >= beta_ij
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            MipConstraint row;
            row.name = idx2("scale_cap", i, j);
            row.sense = RowSense::ge;
            row.rhs = 0.0;
            row.terms.push_back({alpha[i], 1.0});
            row.terms.push_back({beta[i * n + j], -1.0});
            model.add_constraint(std::move(row));
        }

    // envelope rows for product = binary * bounded variable:
    //   product <= U b,  product <= var,  product >= var - U (1 - b)
    auto add_envelope = [&](const char* tag, std::size_t product, std::size_t binary, std::size_t var,
                            double bound, const std::string& suffix) {
        MipConstraint cap;
        cap.name = std::string(tag) + "_cap_" + suffix;
        cap.sense = RowSense::le;
        cap.rhs = 0.0;
        cap.terms.push_back({product, 1.0});
        cap.terms.push_back({binary, -bound});
        model.add_constraint(std::move(cap));

        MipConstraint below;
        below.name = std::string(tag) + "_le_" + suffix;
        below.sense = RowSense::le;
        below.rhs = 0.0;
        below.terms.push_back({product, 1.0});
        below.terms.push_back({var, -1.0});
        model.add_constraint(std::move(below));

        MipConstraint above;
        above.name = std::string(tag) + "_ge_" + suffix;
        above.sense = RowSense::ge;
        above.rhs = -bound;
        above.terms.push_back({product, 1.0});
        above.terms.push_back({var, -1.0});
        above.terms.push_back({binary, -bound});
        model.add_constraint(std::move(above));
    };

    for (std::size_t f = 0; f < p; ++f)
        for (std::size_t i = 0; i < n; ++i)
            add_envelope("pa", pa[f * n + i], b[f], alpha[i], alpha_bound[i],
                         std::to_string(f) + "_" + std::to_string(i));
    for (std::size_t f = 0; f < p; ++f)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                add_envelope("pb", pb[(f * n + i) * n + j], b[f], beta[i * n + j], alpha_bound[i],
                             std::to_string(f) + "_" + std::to_string(i) + "_" + std::to_string(j));
            }

    return model;
}

FeatureSelection selection_from_solution(const MipModel& model,
                                         const std::map<std::string, double>& values) {
    std::vector<std::size_t> indices;
    for (std::size_t f = 0; f < model.n_features; ++f) {
        auto it = values.find("b_" + std::to_string(f));
        if (it != values.end() && it->second > 0.5) indices.push_back(f);
    }
    return FeatureSelection(std::move(indices));
}

CrosscheckReport crosscheck_solution(const Dataset& dataset, const FeatureSelection& selection,
                                     const EvalConfig& eval_config,
                                     std::optional<double> claimed_objective, double tolerance) {
    if (selection.empty()) throw std::invalid_argument("empty feature selection");
    CrosscheckReport report;
    report.mip_objective_claimed = claimed_objective;
    report.core_objective = evaluate_selection(dataset, selection, eval_config).objective;
    report.tolerance = tolerance;
    if (claimed_objective) {
        const double scale = std::max(1.0, std::abs(report.core_objective));
        report.match = std::abs(*claimed_objective - report.core_objective) <= tolerance * scale;
    } else {
        report.match = true;
    }
    return report;
}

} // namespace exfeat
