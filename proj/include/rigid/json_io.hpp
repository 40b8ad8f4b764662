#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "rigid/framework.hpp"

namespace rigid {

using json = nlohmann::ordered_json;

namespace detail {

template <class T>
T scalar_from_json(const nlohmann::ordered_json& v) {
    if (v.is_number()) {
        return scalar_from_double<T>(v.template get<double>());
    }
    if (v.is_string()) {
        const Rational q = rational_from_string(v.template get<std::string>());
        if constexpr (is_exact_v<T>)
            return q;
        else
            return to_double(q);
    }
    throw SchemaError("coordinate must be a number or a 'p/q' string");
}

inline json scalar_to_json(double x) { return json(x); }

/// Rationals that round-trip through a double are written as plain numbers;
/// everything else as an exact "p/q" string.
inline json scalar_to_json(const Rational& q) {
    const double d = to_double(q);
    if (std::isfinite(d) && rational_from_double(d) == q) return json(d);
    return json(q.str());
}

template <class T>
Vector<T> vector_from_json(const nlohmann::ordered_json& arr) {
    if (!arr.is_array()) throw SchemaError("expected an array of coordinates");
    Vector<T> out;
    for (const auto& v : arr) out.push_back(scalar_from_json<T>(v));
    return out;
}

template <class T>
json vector_to_json(const Vector<T>& v) {
    json arr = json::array();
    for (const auto& x : v) arr.push_back(scalar_to_json(x));
    return arr;
}

} // namespace detail

/// Framework document:
/// {"dimension": d, "geometry": "euclidean"|"hyperbolic"|"spherical",
///  "vertices": [[...], ...], "edges": [[i,j], ...], "labels": [...]?}
/// Unknown keys (e.g. catalog provenance) are ignored.
template <class T>
Framework<T> parse_framework(const json& doc) {
    if (!doc.is_object()) throw SchemaError("framework document must be an object");
    for (const char* key : {"dimension", "geometry", "vertices", "edges"})
        if (!doc.contains(key)) throw SchemaError(std::string("missing key '") + key + "'");

    Framework<T> fw;
    if (!doc["dimension"].is_number_integer()) throw SchemaError("dimension must be an integer");
    fw.dim = doc["dimension"].get<int>();
    fw.geometry = geometry_from_name(doc["geometry"].get<std::string>());
    for (const auto& v : doc["vertices"]) fw.vertices.push_back(detail::vector_from_json<T>(v));
    for (const auto& e : doc["edges"]) {
        if (!e.is_array() || e.size() != 2) throw SchemaError("edge must be a pair [i, j]");
        fw.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    if (doc.contains("labels")) {
        for (const auto& l : doc["labels"]) fw.labels.push_back(l.get<std::string>());
    }
    fw.validate();
    return fw;
}

template <class T>
json framework_to_json(const Framework<T>& fw) {
    json doc;
    doc["dimension"] = fw.dim;
    doc["geometry"] = geometry_name(fw.geometry);
    json verts = json::array();
    for (const auto& v : fw.vertices) verts.push_back(detail::vector_to_json(v));
    doc["vertices"] = std::move(verts);
    json edges = json::array();
    for (const auto& [i, j] : fw.edges) edges.push_back(json::array({i, j}));
    doc["edges"] = std::move(edges);
    if (!fw.labels.empty()) doc["labels"] = fw.labels;
    return doc;
}

/// Velocity/load document: {"field": [[...], ...]}
template <class T>
VectorField<T> parse_field(const json& doc) {
    if (!doc.is_object() || !doc.contains("field")) throw SchemaError("missing key 'field'");
    VectorField<T> out;
    for (const auto& v : doc["field"]) out.push_back(detail::vector_from_json<T>(v));
    return out;
}

template <class T>
json field_to_json(const VectorField<T>& f) {
    json doc;
    json arr = json::array();
    for (const auto& v : f) arr.push_back(detail::vector_to_json(v));
    doc["field"] = std::move(arr);
    return doc;
}

/// Stress document: {"stress": [[i, j, value], ...]}, matched against the
/// framework's edge list.
template <class T>
Stress<T> parse_stress(const json& doc, const Framework<T>& fw) {
    if (!doc.is_object() || !doc.contains("stress")) throw SchemaError("missing key 'stress'");
    Stress<T> st;
    st.values.assign(fw.edge_count(), T(0));
    for (const auto& row : doc["stress"]) {
        if (!row.is_array() || row.size() != 3) throw SchemaError("stress row must be [i, j, w]");
        const int i = row[0].get<int>();
        const int j = row[1].get<int>();
        bool found = false;
        for (std::size_t e = 0; e < fw.edges.size(); ++e) {
            const auto& [a, b] = fw.edges[e];
            if ((a == i && b == j) || (a == j && b == i)) {
                st.values[e] = detail::scalar_from_json<T>(row[2]);
                found = true;
                break;
            }
        }
        if (!found) throw SchemaError("stress names an edge not present in the framework");
    }
    return st;
}

template <class T>
json stress_to_json(const Stress<T>& st, const Framework<T>& fw) {
    json doc;
    json arr = json::array();
    for (std::size_t e = 0; e < fw.edges.size(); ++e) {
        arr.push_back(json::array(
            {fw.edges[e].first, fw.edges[e].second, detail::scalar_to_json(st.values[e])}));
    }
    doc["stress"] = std::move(arr);
    return doc;
}

/// Projective map document: {"matrix": [[... d+1 rows ...]]}
template <class T>
Matrix<T> parse_square_matrix(const json& doc) {
    if (!doc.is_object() || !doc.contains("matrix")) throw SchemaError("missing key 'matrix'");
    const auto& rows = doc["matrix"];
    if (!rows.is_array() || rows.empty()) throw SchemaError("matrix must be a non-empty array");
    const std::size_t n = rows.size();
    Matrix<T> m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = detail::vector_from_json<T>(rows[i]);
        if (row.size() != n) throw SchemaError("matrix must be square");
        for (std::size_t j = 0; j < n; ++j) m(i, j) = row[j];
    }
    return m;
}

template <class T>
json matrix_to_json(const Matrix<T>& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(detail::vector_to_json(m.row(i)));
    json doc;
    doc["matrix"] = std::move(rows);
    return doc;
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open file '" + path + "'");
    json doc;
    try {
        in >> doc;
    } catch (const std::exception& e) {
        throw SchemaError("invalid JSON in '" + path + "': " + e.what());
    }
    return doc;
}

inline void save_json_file(const std::string& path, const json& doc) {
    std::ofstream out(path);
    if (!out) throw SchemaError("cannot write file '" + path + "'");
    out << doc.dump(2) << "\n";
}

} // namespace rigid
