#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rigid/linalg.hpp"
#include "rigid/matrix.hpp"
#include "rigid/tolerance.hpp"

namespace rigid {

enum class Geometry { euclidean, hyperbolic, spherical };

inline std::string geometry_name(Geometry g) {
    switch (g) {
        case Geometry::euclidean: return "euclidean";
        case Geometry::hyperbolic: return "hyperbolic";
        case Geometry::spherical: return "spherical";
    }
    return "euclidean";
}

inline Geometry geometry_from_name(const std::string& s) {
    if (s == "euclidean") return Geometry::euclidean;
    if (s == "hyperbolic") return Geometry::hyperbolic;
    if (s == "spherical") return Geometry::spherical;
    throw SchemaError("unknown geometry '" + s + "'");
}

/// Ambient bilinear form on R^{d+1}: Euclidean for the sphere, Minkowski of
/// signature (+, -, ..., -) for the hyperboloid.
template <class T>
T ambient_inner(Geometry g, const Vector<T>& u, const Vector<T>& v) {
    if (u.size() != v.size()) throw DimensionMismatch("ambient_inner length mismatch");
    T acc(0);
    for (std::size_t a = 0; a < u.size(); ++a) {
        const T term = u[a] * v[a];
        if (g == Geometry::hyperbolic && a > 0)
            acc -= term;
        else
            acc += term;
    }
    return acc;
}

/// Per-vertex velocity (or force) vectors. Euclidean entries have d
/// components; hyperbolic/spherical entries carry d+1 ambient components.
template <class T>
using VectorField = std::vector<Vector<T>>;

template <class T>
using VelocityField = VectorField<T>;
template <class T>
using Load = VectorField<T>;

/// Per-edge stress scalars, stored parallel to the framework's edge list.
template <class T>
struct Stress {
    Vector<T> values;
};

/// Bar-joint framework: a graph drawn in one of the three geometries.
/// Vertices keep their file order; that order fixes matrix row/column
/// layouts everywhere downstream.
template <class T>
struct Framework {
    int dim = 0;
    Geometry geometry = Geometry::euclidean;
    std::vector<Vector<T>> vertices;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::string> labels; // optional; empty or one per vertex

    std::size_t vertex_count() const { return vertices.size(); }
    std::size_t edge_count() const { return edges.size(); }
    int ambient_len() const { return geometry == Geometry::euclidean ? dim : dim + 1; }

    /// Checks every structural invariant; throws on the first violation.
    void validate() const {
        if (dim < 1) throw SchemaError("dimension must be >= 1");
        const std::size_t want = static_cast<std::size_t>(ambient_len());
        for (std::size_t i = 0; i < vertices.size(); ++i) {
            if (vertices[i].size() != want)
                throw SchemaError("vertex " + std::to_string(i) + " has wrong coordinate count");
            if constexpr (!is_exact_v<T>) {
                for (const T& x : vertices[i])
                    if (!std::isfinite(x)) throw NonFiniteEntry("vertex coordinate is NaN or Inf");
            }
        }
        if (!labels.empty() && labels.size() != vertices.size())
            throw SchemaError("label count does not match vertex count");

        std::set<std::pair<int, int>> seen;
        for (const auto& [i, j] : edges) {
            if (i < 0 || j < 0 || i >= static_cast<int>(vertices.size()) ||
                j >= static_cast<int>(vertices.size()))
                throw SchemaError("edge index out of range");
            if (i == j) throw SchemaError("self-loop edge");
            const auto key = std::minmax(i, j);
            if (!seen.insert(key).second) throw SchemaError("duplicate edge");
            if (vertices[i] == vertices[j])
                throw CoincidentEdgeEndpoints("edge (" + std::to_string(i) + "," +
                                              std::to_string(j) + ") joins coincident points");
        }

        if (geometry != Geometry::euclidean) {
            const T band = scalar_from_double<T>(tolerances::surface_residual);
            for (std::size_t i = 0; i < vertices.size(); ++i) {
                const Vector<T>& x = vertices[i];
                if (geometry == Geometry::hyperbolic && !(x[0] > T(0)))
                    throw NonPositiveSheet("hyperbolic vertex " + std::to_string(i) +
                                           " has x0 <= 0");
                const T nsq = ambient_inner(geometry, x, x);
                const T resid = nsq - T(1);
                if (abs_value(resid) > band)
                    throw OffSurfaceVertex("vertex " + std::to_string(i) +
                                           " is off the model surface");
            }
        }
    }
};

/// Vertices as points of RP^d via nonzero representatives in R^{d+1}.
template <class T>
struct ProjectiveFramework {
    int dim = 0;
    std::vector<Vector<T>> representatives;
    std::vector<std::pair<int, int>> edges;

    void validate() const {
        for (const auto& x : representatives)
            if (all_zero(x)) throw SchemaError("zero projective representative");
        for (const auto& [i, j] : edges) {
            if (proportional(representatives[i], representatives[j]))
                throw CoincidentEdgeEndpoints("projective edge endpoints are proportional");
        }
    }

    static bool proportional(const Vector<T>& x, const Vector<T>& y) {
        for (std::size_t a = 0; a + 1 < x.size(); ++a)
            for (std::size_t b = a + 1; b < x.size(); ++b)
                if (!is_zero(x[a] * y[b] - x[b] * y[a])) return false;
        return true;
    }
};

/// Euclidean p becomes (1, p); hyperbolic and spherical vertices already
/// live in R^{d+1} and pass through unchanged.
template <class T>
ProjectiveFramework<T> lift_to_projective(const Framework<T>& fw) {
    ProjectiveFramework<T> out;
    out.dim = fw.dim;
    out.edges = fw.edges;
    for (const auto& p : fw.vertices) {
        if (fw.geometry == Geometry::euclidean) {
            Vector<T> x(fw.dim + 1, T(0));
            x[0] = T(1);
            for (int a = 0; a < fw.dim; ++a) x[a + 1] = p[a];
            out.representatives.push_back(std::move(x));
        } else {
            out.representatives.push_back(p);
        }
    }
    return out;
}

template <class T>
Vector<T> homogeneous_lift(const Framework<T>& fw, std::size_t i) {
    if (fw.geometry == Geometry::euclidean) {
        Vector<T> x(fw.dim + 1, T(0));
        x[0] = T(1);
        for (int a = 0; a < fw.dim; ++a) x[a + 1] = fw.vertices[i][a];
        return x;
    }
    return fw.vertices[i];
}

/// Dimension of the affine hull of the vertex set (Euclidean frameworks).
template <class T>
std::size_t affine_span_dim(const Framework<T>& fw, const TolerancePolicy& tol = {}) {
    if (fw.geometry != Geometry::euclidean)
        throw GeometryMismatch("affine_span_dim expects a Euclidean framework");
    if (fw.vertices.size() <= 1) return 0;
    Matrix<T> diffs(fw.vertices.size() - 1, fw.dim);
    for (std::size_t i = 1; i < fw.vertices.size(); ++i)
        for (int a = 0; a < fw.dim; ++a)
            diffs(i - 1, a) = fw.vertices[i][a] - fw.vertices[0][a];
    return rank_of(diffs, tol);
}

template <class U, class T>
Framework<U> convert_framework(const Framework<T>& fw) {
    Framework<U> out;
    out.dim = fw.dim;
    out.geometry = fw.geometry;
    out.edges = fw.edges;
    out.labels = fw.labels;
    out.vertices.reserve(fw.vertices.size());
    for (const auto& p : fw.vertices) {
        Vector<U> q(p.size());
        for (std::size_t a = 0; a < p.size(); ++a) q[a] = scalar_from_double<U>(to_double(p[a]));
        out.vertices.push_back(std::move(q));
    }
    return out;
}

/// Exact conversion double -> rational (dyadic), vertexwise.
inline Framework<Rational> to_exact(const Framework<double>& fw) {
    Framework<Rational> out;
    out.dim = fw.dim;
    out.geometry = fw.geometry;
    out.edges = fw.edges;
    out.labels = fw.labels;
    for (const auto& p : fw.vertices) {
        Vector<Rational> q(p.size());
        for (std::size_t a = 0; a < p.size(); ++a) q[a] = rational_from_double(p[a]);
        out.vertices.push_back(std::move(q));
    }
    return out;
}

inline Framework<double> to_floating(const Framework<Rational>& fw) {
    Framework<double> out;
    out.dim = fw.dim;
    out.geometry = fw.geometry;
    out.edges = fw.edges;
    out.labels = fw.labels;
    for (const auto& p : fw.vertices) {
        Vector<double> q(p.size());
        for (std::size_t a = 0; a < p.size(); ++a) q[a] = to_double(p[a]);
        out.vertices.push_back(std::move(q));
    }
    return out;
}

template <class T>
VectorField<T> field_to(const VectorField<double>& f) {
    VectorField<T> out;
    for (const auto& v : f) {
        Vector<T> w(v.size());
        for (std::size_t a = 0; a < v.size(); ++a) w[a] = scalar_from_double<T>(v[a]);
        out.push_back(std::move(w));
    }
    return out;
}

inline VectorField<double> field_to_floating(const VectorField<Rational>& f) {
    VectorField<double> out;
    for (const auto& v : f) {
        Vector<double> w(v.size());
        for (std::size_t a = 0; a < v.size(); ++a) w[a] = to_double(v[a]);
        out.push_back(std::move(w));
    }
    return out;
}

/// Flattens a per-vertex field into the (vertex, coordinate) column order
/// used by the rigidity matrix.
template <class T>
Vector<T> flatten(const VectorField<T>& f) {
    Vector<T> out;
    for (const auto& v : f) out.insert(out.end(), v.begin(), v.end());
    return out;
}

template <class T>
VectorField<T> unflatten(const Vector<T>& flat, std::size_t n_vertices) {
    if (n_vertices == 0 || flat.size() % n_vertices != 0)
        throw DimensionMismatch("flat field length not divisible by vertex count");
    const std::size_t per = flat.size() / n_vertices;
    VectorField<T> out(n_vertices);
    for (std::size_t i = 0; i < n_vertices; ++i)
        out[i] = Vector<T>(flat.begin() + i * per, flat.begin() + (i + 1) * per);
    return out;
}

} // namespace rigid
