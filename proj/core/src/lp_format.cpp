#include "exfeat/lp_format.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace exfeat {

namespace {

std::string format_number(double v) {
    char buf[40];
    if (v == static_cast<long long>(v) && std::abs(v) < 1e15) {
        std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(v));
    } else {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
    }
    return buf;
}

void append_terms(std::ostringstream& out, const std::vector<LinearTerm>& terms,
                  const std::vector<MipVariable>& vars) {
    bool first = true;
    for (const LinearTerm& t : terms) {
        if (t.coef == 0.0) continue;
        const double mag = std::abs(t.coef);
        if (first) {
            out << (t.coef < 0 ? "- " : "");
            first = false;
        } else {
            out << (t.coef < 0 ? " - " : " + ");
        }
        if (mag != 1.0) out << format_number(mag) << ' ';
        out << vars[t.var].name;
    }
    if (first) out << "0 " << (vars.empty() ? "x" : vars[0].name);
}

void append_row(std::ostringstream& out, const std::string& name, const std::vector<LinearTerm>& terms,
                const char* op, double rhs, const std::vector<MipVariable>& vars) {
    out << ' ' << name << ": ";
    append_terms(out, terms, vars);
    out << ' ' << op << ' ' << format_number(rhs) << '\n';
}

} // namespace

std::string to_lp_string(const MipModel& model) {
    std::ostringstream out;
    out << "\\ " << (model.name.empty() ? "model" : model.name) << '\n';
    if (model.n_points > 0) {
        out << "\\ formulation="
            << (model.formulation == MipFormulation::optimistic ? "optimistic" : "pessimistic")
            << " n_points=" << model.n_points << " n_features=" << model.n_features << " k=" << model.k
            << " max_selected=" << model.max_selected;
        if (model.big_m > 0.0) out << " big_m=" << format_number(model.big_m);
        out << '\n';
    }
    for (const auto& [var, value] : model.start_hint)
        out << "\\ start " << model.variables()[var].name << " = " << format_number(value) << '\n';

    out << "Minimize\n obj: ";
    append_terms(out, model.objective(), model.variables());
    out << '\n';

    if (!model.constraints().empty()) {
        out << "Subject To\n";
        for (const MipConstraint& row : model.constraints()) {
            switch (row.sense) {
                case RowSense::le:
                    append_row(out, row.name, row.terms, "<=", row.rhs, model.variables());
                    break;
                case RowSense::ge:
                    append_row(out, row.name, row.terms, ">=", row.rhs, model.variables());
                    break;
                case RowSense::eq:
                    append_row(out, row.name, row.terms, "=", row.rhs, model.variables());
                    break;
                case RowSense::range:
                    append_row(out, row.name + "_lo", row.terms, ">=", row.range_lb, model.variables());
                    append_row(out, row.name + "_hi", row.terms, "<=", row.rhs, model.variables());
                    break;
            }
        }
    }

    std::ostringstream bounds;
    for (const MipVariable& var : model.variables()) {
        if (var.kind == VarKind::binary) continue;
        const bool lower_free = std::isinf(var.lower) && var.lower < 0;
        const bool upper_free = std::isinf(var.upper) && var.upper > 0;
        if (lower_free && upper_free) {
            bounds << ' ' << var.name << " free\n";
        } else if (var.lower == 0.0 && upper_free) {
            continue; // LP default bounds
        } else if (lower_free) {
            bounds << ' ' << var.name << " <= " << format_number(var.upper) << '\n';
        } else if (upper_free) {
            bounds << ' ' << var.name << " >= " << format_number(var.lower) << '\n';
        } else {
            bounds << ' ' << format_number(var.lower) << " <= " << var.name << " <= "
                   << format_number(var.upper) << '\n';
        }
    }
    const std::string bounds_str = bounds.str();
    if (!bounds_str.empty()) out << "Bounds\n" << bounds_str;

    std::ostringstream binaries;
    for (const MipVariable& var : model.variables())
        if (var.kind == VarKind::binary) binaries << ' ' << var.name;
    const std::string binaries_str = binaries.str();
    if (!binaries_str.empty()) out << "Binaries\n" << binaries_str << '\n';

    out << "End\n";
    return out.str();
}

void write_exchange_file(const MipModel& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write model file: " + path);
    out << to_lp_string(model);
    if (!out) throw std::runtime_error("failed while writing model file: " + path);
}

SolutionFile parse_solution_text(const std::string& text) {
    SolutionFile solution;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const std::size_t comment = line.find_first_of("#\\");
        if (comment != std::string::npos) line.erase(comment);
        for (auto& c : line)
            if (c == '=') c = ' ';
        std::istringstream fields(line);
        std::string name;
        double value;
        if (!(fields >> name >> value)) continue;
        if (name == "objective" || name == "obj") {
            solution.objective = value;
        } else {
            solution.values[name] = value;
        }
    }
    return solution;
}

SolutionFile read_solution_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open solution file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_solution_text(text);
}

} // namespace exfeat
