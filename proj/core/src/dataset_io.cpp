#include "exfeat/dataset_io.hpp"

#include <fstream>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

#include "exfeat/evaluate.hpp"

namespace exfeat {

namespace {

using json = nlohmann::ordered_json;

FeatureColumn parse_column(const json& jcol, std::size_t index) {
    FeatureColumn col;
    col.name = jcol.value("name", "feat_" + std::to_string(index));
    const std::string kind = jcol.value("kind", "numeric");
    if (kind == "numeric") {
        col.kind = FeatureKind::numeric;
    } else if (kind == "categorical") {
        col.kind = FeatureKind::categorical;
    } else {
        throw std::invalid_argument("feature '" + col.name + "': unknown kind '" + kind + "'");
    }

    const json& values = jcol.at("values");
    if (!values.is_array()) throw std::invalid_argument("feature '" + col.name + "': values must be an array");
    if (col.kind == FeatureKind::numeric) {
        for (const auto& v : values) {
            if (!v.is_number()) throw std::invalid_argument("feature '" + col.name + "': non-numeric value");
            col.values.push_back(v.get<double>());
        }
        return col;
    }

    std::unordered_map<std::string, std::size_t> symbol_ids;
    for (const auto& v : values) {
        if (v.is_string()) {
            const std::string s = v.get<std::string>();
            auto [it, inserted] = symbol_ids.emplace(s, col.symbols.size());
            if (inserted) col.symbols.push_back(s);
            col.values.push_back(static_cast<double>(it->second));
        } else if (v.is_number_integer()) {
            const long long id = v.get<long long>();
            if (id < 0) throw std::invalid_argument("feature '" + col.name + "': negative symbol id");
            col.values.push_back(static_cast<double>(id));
        } else {
            throw std::invalid_argument("feature '" + col.name + "': categorical values must be strings or integer ids");
        }
    }
    if (col.symbols.empty()) {
        double max_id = 0.0;
        for (double v : col.values) max_id = std::max(max_id, v);
        for (long long id = 0; id <= static_cast<long long>(max_id); ++id)
            col.symbols.push_back("s" + std::to_string(id));
    }
    return col;
}

} // namespace

Dataset parse_dataset_json(const std::string& text, bool normalize_features) {
    json doc = json::parse(text);
    if (!doc.is_object()) throw std::invalid_argument("dataset file must contain a JSON object");

    std::vector<FeatureColumn> columns;
    const json& jfeatures = doc.at("features");
    if (!jfeatures.is_array() || jfeatures.empty())
        throw std::invalid_argument("dataset needs a nonempty 'features' array");
    for (std::size_t f = 0; f < jfeatures.size(); ++f) columns.push_back(parse_column(jfeatures[f], f));

    const std::size_t n = columns.front().values.size();
    if (doc.contains("n_points") && doc["n_points"].get<std::size_t>() != n)
        throw std::invalid_argument("n_points does not match feature column length");

    std::vector<double> matrix;
    if (doc.contains("solution_distance")) {
        const json& jmat = doc["solution_distance"];
        if (!jmat.is_array() || jmat.size() != n)
            throw std::invalid_argument("solution_distance must be an N x N matrix");
        matrix.reserve(n * n);
        for (const auto& row : jmat) {
            if (!row.is_array() || row.size() != n)
                throw std::invalid_argument("solution_distance must be an N x N matrix");
            for (const auto& v : row) matrix.push_back(v.get<double>());
        }
    } else if (doc.contains("solution_features")) {
        std::vector<std::vector<double>> rows;
        for (const auto& jrow : doc["solution_features"]) rows.push_back(jrow.get<std::vector<double>>());
        if (rows.size() != n) throw std::invalid_argument("solution_features must have one row per data point");
        matrix = solution_distance_matrix(rows);
    } else {
        throw std::invalid_argument("dataset needs 'solution_distance' or 'solution_features'");
    }

    return Dataset(std::move(columns), std::move(matrix), normalize_features);
}

Dataset load_dataset_json(const std::string& path, bool normalize_features) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open dataset file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    try {
        return parse_dataset_json(text, normalize_features);
    } catch (const json::exception& e) {
        throw std::invalid_argument("invalid dataset file " + path + ": " + e.what());
    }
}

std::string dataset_to_json(const Dataset& dataset) {
    json doc;
    doc["n_points"] = dataset.n_points();
    doc["features"] = json::array();
    for (const FeatureColumn& col : dataset.features()) {
        json jcol;
        jcol["name"] = col.name;
        jcol["kind"] = col.kind == FeatureKind::numeric ? "numeric" : "categorical";
        if (col.kind == FeatureKind::categorical && !col.symbols.empty()) {
            json vals = json::array();
            for (double v : col.values) {
                const auto id = static_cast<std::size_t>(v);
                vals.push_back(id < col.symbols.size() ? json(col.symbols[id])
                                                       : json(static_cast<long long>(id)));
            }
            jcol["values"] = std::move(vals);
        } else {
            jcol["values"] = col.values;
        }
        doc["features"].push_back(std::move(jcol));
    }
    json mat = json::array();
    const std::size_t n = dataset.n_points();
    for (std::size_t i = 0; i < n; ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < n; ++j) row.push_back(dataset.solution_distance(i, j));
        mat.push_back(std::move(row));
    }
    doc["solution_distance"] = std::move(mat);
    return doc.dump(2) + "\n";
}

void save_dataset_json(const Dataset& dataset, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write dataset file: " + path);
    out << dataset_to_json(dataset);
}

} // namespace exfeat
