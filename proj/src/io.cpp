#include "qcoh/io.hpp"

#include <fstream>

namespace qcoh {

using nlohmann::json;

nlohmann::json matrix_to_json(const Mat& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

Mat matrix_from_json(const json& j, const std::string& context) {
    if (!j.is_array() || j.empty())
        throw ParseError(context + ": matrix must be a nonempty array of rows");
    const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
    const json& first = j.at(0);
    if (!first.is_array() || first.empty())
        throw ParseError(context + ": row 0 must be a nonempty array");
    const Eigen::Index cols = static_cast<Eigen::Index>(first.size());
    Mat m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const json& row = j.at(i);
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
            throw ParseError(context + ": row " + std::to_string(i) + " has wrong length");
        for (Eigen::Index k = 0; k < cols; ++k) {
            const json& entry = row.at(k);
            if (!entry.is_array() || entry.size() != 2 || !entry.at(0).is_number() ||
                !entry.at(1).is_number())
                throw ParseError(context + ": entry (" + std::to_string(i) + "," +
                                 std::to_string(k) + ") must be [re, im]");
            m(i, k) = Cplx(entry.at(0).get<double>(), entry.at(1).get<double>());
        }
    }
    if (!all_finite(m)) throw ParseError(context + ": non-finite matrix entry");
    return m;
}

namespace {

void check_kind(const json& j, const std::string& expected) {
    if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
        throw ParseError("file is not a qcoh JSON object with a \"kind\" field");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind != expected)
        throw ParseError("expected kind \"" + expected + "\", found \"" + kind + "\"");
}

int get_dim(const json& j) {
    if (!j.contains("dim") || !j.at("dim").is_number_integer())
        throw ParseError("missing or non-integer \"dim\" field");
    const int d = j.at("dim").get<int>();
    if (d < 1) throw ParseError("\"dim\" must be positive");
    if (d > max_dim())
        throw ParseError("\"dim\" " + std::to_string(d) + " exceeds dimension cap " +
                         std::to_string(max_dim()));
    return d;
}

std::pair<int, int> get_dims(const json& j) {
    if (!j.contains("dims") || !j.at("dims").is_array() || j.at("dims").size() != 2)
        throw ParseError("missing or malformed \"dims\" field (expect [dA, dB])");
    const int da = j.at("dims").at(0).get<int>();
    const int db = j.at("dims").at(1).get<int>();
    if (da < 1 || db < 1) throw ParseError("\"dims\" entries must be positive");
    if (static_cast<long>(da) * db > max_dim())
        throw ParseError("product of \"dims\" exceeds dimension cap " +
                         std::to_string(max_dim()));
    return {da, db};
}

Mat sized_matrix(const json& j, const char* field, int dim, const std::string& context) {
    if (!j.contains(field)) throw ParseError(context + ": missing \"" + field + "\"");
    Mat m = matrix_from_json(j.at(field), context);
    if (m.rows() != dim || m.cols() != dim)
        throw ParseError(context + ": matrix is " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + ", expected " + std::to_string(dim) +
                         "x" + std::to_string(dim));
    return m;
}

} // namespace

json to_json(const DensityMatrix& rho) {
    return json{{"kind", "density"}, {"dim", rho.dim()}, {"matrix", matrix_to_json(rho.mat)}};
}

json to_json(const Ensemble& e) {
    json items = json::array();
    for (int i = 0; i < e.size(); ++i)
        items.push_back(json{{"p", e.probs[i]}, {"matrix", matrix_to_json(e.members[i].mat)}});
    return json{{"kind", "ensemble"}, {"dim", e.dim()}, {"items", std::move(items)}};
}

json to_json(const BipartiteState& s) {
    return json{{"kind", "bipartite"},
                {"dims", json::array({s.dim_a, s.dim_b})},
                {"matrix", matrix_to_json(s.state.mat)}};
}

json to_json(const SeparableSpec& spec) {
    json terms = json::array();
    for (int x = 0; x < spec.size(); ++x)
        terms.push_back(json{{"p", spec.probs[x]},
                             {"a", matrix_to_json(spec.a_parts[x].mat)},
                             {"b", matrix_to_json(spec.b_parts[x].mat)}});
    return json{{"kind", "separable"},
                {"dims", json::array({spec.dim_a(), spec.dim_b()})},
                {"terms", std::move(terms)}};
}

DensityMatrix density_from_json(const json& j) {
    check_kind(j, "density");
    const int d = get_dim(j);
    DensityMatrix rho{sized_matrix(j, "matrix", d, "density")};
    require_valid(rho);
    return rho;
}

Ensemble ensemble_from_json(const json& j) {
    check_kind(j, "ensemble");
    const int d = get_dim(j);
    if (!j.contains("items") || !j.at("items").is_array() || j.at("items").empty())
        throw ParseError("ensemble: missing or empty \"items\" array");
    Ensemble e;
    int idx = 0;
    for (const json& item : j.at("items")) {
        const std::string ctx = "ensemble item " + std::to_string(idx);
        if (!item.contains("p") || !item.at("p").is_number())
            throw ParseError(ctx + ": missing numeric \"p\"");
        e.probs.push_back(item.at("p").get<double>());
        e.members.push_back({sized_matrix(item, "matrix", d, ctx)});
        ++idx;
    }
    require_valid(e);
    return e;
}

BipartiteState bipartite_from_json(const json& j) {
    check_kind(j, "bipartite");
    auto [da, db] = get_dims(j);
    BipartiteState s{da, db, {sized_matrix(j, "matrix", da * db, "bipartite")}};
    require_valid(s);
    return s;
}

SeparableSpec separable_from_json(const json& j) {
    check_kind(j, "separable");
    auto [da, db] = get_dims(j);
    if (!j.contains("terms") || !j.at("terms").is_array() || j.at("terms").empty())
        throw ParseError("separable: missing or empty \"terms\" array");
    SeparableSpec spec;
    int idx = 0;
    for (const json& term : j.at("terms")) {
        const std::string ctx = "separable term " + std::to_string(idx);
        if (!term.contains("p") || !term.at("p").is_number())
            throw ParseError(ctx + ": missing numeric \"p\"");
        spec.probs.push_back(term.at("p").get<double>());
        spec.a_parts.push_back({sized_matrix(term, "a", da, ctx)});
        spec.b_parts.push_back({sized_matrix(term, "b", db, ctx)});
        ++idx;
    }
    require_valid(spec);
    return spec;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& err) {
        throw ParseError(path + ": " + err.what());
    }
    return j;
}

void write_json_file(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write file: " + path);
    out << j.dump(2) << '\n';
}

void save_state(const DensityMatrix& rho, const std::string& path) {
    write_json_file(to_json(rho), path);
}
void save_ensemble(const Ensemble& e, const std::string& path) {
    write_json_file(to_json(e), path);
}
void save_bipartite(const BipartiteState& s, const std::string& path) {
    write_json_file(to_json(s), path);
}
void save_separable(const SeparableSpec& spec, const std::string& path) {
    write_json_file(to_json(spec), path);
}

DensityMatrix load_state(const std::string& path) {
    return density_from_json(load_json_file(path));
}
Ensemble load_ensemble(const std::string& path) {
    return ensemble_from_json(load_json_file(path));
}
BipartiteState load_bipartite(const std::string& path) {
    return bipartite_from_json(load_json_file(path));
}
SeparableSpec load_separable(const std::string& path) {
    return separable_from_json(load_json_file(path));
}

void save_basis(const Mat& u, const std::string& path) {
    require_unitary(u);
    write_json_file(json{{"kind", "basis"},
                         {"dim", static_cast<int>(u.rows())},
                         {"matrix", matrix_to_json(u)}},
                    path);
}

Mat load_basis(const std::string& path) {
    json j = load_json_file(path);
    check_kind(j, "basis");
    const int d = get_dim(j);
    Mat u = sized_matrix(j, "matrix", d, "basis");
    require_unitary(u);
    return u;
}

} // namespace qcoh
