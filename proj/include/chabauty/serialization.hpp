#pragma once

#include <chabauty/blownball.hpp>
#include <chabauty/sl4.hpp>

#include <json.hpp>

namespace chabauty::io {

using json = nlohmann::json;

inline json rat_json(const Rat& q) { return rat_to_string(q); }

inline Rat rat_from_json(const json& j) {
    if (j.is_number_integer()) return Rat(j.get<long long>());
    return rat_from_string(j.get<std::string>());
}

/// Matrices serialize as row-major arrays of rational strings.
inline json matrix_json(const MatQ& m) {
    json rows = json::array();
    for (long i = 0; i < m.rows; ++i) {
        json row = json::array();
        for (long j = 0; j < m.cols; ++j) row.push_back(rat_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline MatQ matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty() || !j[0].is_array())
        throw std::invalid_argument("matrix: expected an array of rows");
    MatQ m(static_cast<long>(j.size()), static_cast<long>(j[0].size()));
    for (long i = 0; i < m.rows; ++i) {
        if (static_cast<long>(j[i].size()) != m.cols)
            throw std::invalid_argument("matrix: ragged rows");
        for (long c = 0; c < m.cols; ++c) m(i, c) = rat_from_json(j[i][c]);
    }
    return m;
}

inline json subspace_json(const SubspaceQ& s) {
    return json{{"ambient", s.ambient}, {"r", s.r()}, {"basis", matrix_json(s.basis)}};
}

inline SubspaceQ subspace_from_json(const json& j) {
    long ambient = j.at("ambient").get<long>();
    MatQ basis = matrix_from_json(j.at("basis"));
    if (basis.cols != ambient) throw std::invalid_argument("subspace: basis width != ambient");
    SubspaceQ s = span_of(std::move(basis));
    if (j.contains("r") && j.at("r").get<long>() != s.r())
        throw std::invalid_argument("subspace: declared rank does not match the basis");
    return s;
}

/// Pluecker coordinates as integer strings in the declared lexicographic
/// minor order (values routinely exceed 2^53, so no JSON numbers).
inline json plucker_json(const PluckerVec& p) {
    json coords = json::array();
    for (const auto& c : p.coords) coords.push_back(c.str());
    return json{{"order", "lex"}, {"ambient", p.ambient}, {"r", p.r}, {"coords", coords}};
}

/// Unit-norm float shadow of a Pluecker vector, for figure emission.
inline json plucker_float_json(const PluckerVec& p) {
    double norm = 0;
    std::vector<double> v;
    v.reserve(p.coords.size());
    for (const auto& c : p.coords) {
        v.push_back(Rat(c).template convert_to<double>());
        norm += v.back() * v.back();
    }
    norm = std::sqrt(norm);
    json out = json::array();
    for (double x : v) out.push_back(x / norm);
    return out;
}

inline json group_json(const GroupElement& g) { return matrix_json(g.m); }

} // namespace chabauty::io
