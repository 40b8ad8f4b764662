#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "rigid/json_io.hpp"
#include "rigid/rigidity.hpp"

namespace rigid {

/// Parameters for the built-in example generators. Fields are id-specific;
/// unused ones are ignored.
struct ExampleSpec {
    std::string id; // simplex | cycle | twisted_octahedron | liebmann_octahedron |
                    // desargues | bipartite_quadric
    int dimension = 2;       // simplex
    int count = 4;           // cycle length, bipartite white class size
    int count2 = 3;          // bipartite black class size
    double radius = 1.0;     // twisted octahedron base radius
    double height = 1.0;     // twisted octahedron base separation
    double twist_deg = 0.0;  // rotation of the top base away from the regular antiprism
    bool concurrent = true;  // desargues: matching lines meet
    bool at_infinity = false;// desargues: matching lines parallel (center at infinity)
    std::vector<double> axes; // bipartite: central quadric semi-axes (default unit)
};

struct GeneratedExample {
    Framework<double> fw;
    std::optional<Framework<Rational>> fw_exact;
    json provenance;
    std::vector<std::array<int, 3>> faces;       // octahedra only
    std::vector<std::array<int, 3>> black_faces; // octahedra only
    std::optional<VelocityField<Rational>> known_flex; // bipartite radial field
};

namespace detail {

inline Rational snap_rational(double x, long denom = 1000000) {
    return Rational(static_cast<long long>(std::llround(x * static_cast<double>(denom))), denom);
}

/// Rational point of the unit circle with tan-half parameter t = p/q.
inline Vector<Rational> circle_point(const Rational& t) {
    const Rational num = 1 - t * t;
    const Rational den = 1 + t * t;
    return {num / den, 2 * t / den};
}

/// Rational point of the unit sphere from stereographic parameters (t, u).
inline Vector<Rational> sphere_point(const Rational& t, const Rational& u) {
    const Rational den = 1 + t * t + u * u;
    return {(1 - t * t - u * u) / den, 2 * t / den, 2 * u / den};
}

} // namespace detail

inline GeneratedExample make_simplex(int d) {
    if (d < 1) throw InvalidParameters("simplex dimension must be >= 1");
    GeneratedExample out;
    Framework<Rational> fw;
    fw.dim = d;
    fw.geometry = Geometry::euclidean;
    fw.vertices.emplace_back(d, Rational(0));
    for (int a = 0; a < d; ++a) {
        Vector<Rational> v(d, Rational(0));
        v[a] = 1;
        fw.vertices.push_back(std::move(v));
    }
    for (int i = 0; i <= d; ++i)
        for (int j = i + 1; j <= d; ++j) fw.edges.emplace_back(i, j);
    fw.validate();
    out.fw_exact = fw;
    out.fw = to_floating(fw);
    out.provenance = {{"id", "simplex"}, {"dimension", d}, {"approximate", false}};
    return out;
}

/// n-cycle with vertices on the unit circle (rational tan-half points); the
/// 4-cycle is the unit square. dof is n - 3 for convex position.
inline GeneratedExample make_cycle(int n) {
    if (n < 3) throw InvalidParameters("cycle length must be >= 3");
    GeneratedExample out;
    Framework<Rational> fw;
    fw.dim = 2;
    fw.geometry = Geometry::euclidean;
    if (n == 4) {
        fw.vertices = {{Rational(0), Rational(0)},
                       {Rational(1), Rational(0)},
                       {Rational(1), Rational(1)},
                       {Rational(0), Rational(1)}};
    } else {
        // distinct rational tan-half values in increasing order keep the
        // points in strictly convex position; the 1/4 phase avoids the pole
        long denom = 64;
        std::vector<Rational> ts;
        for (;; denom *= 16) {
            ts.clear();
            bool distinct = true;
            for (int k = 0; k < n; ++k) {
                const double half_angle = M_PI * (k + 0.25) / n;
                const double t = std::tan(half_angle);
                const Rational tr = detail::snap_rational(t, denom);
                for (const auto& prev : ts)
                    if (prev == tr) distinct = false;
                ts.push_back(tr);
            }
            if (distinct) break;
            if (denom > (1L << 40)) throw InvalidParameters("cannot separate cycle vertices");
        }
        for (const auto& t : ts) fw.vertices.push_back(detail::circle_point(t));
    }
    for (int k = 0; k < n; ++k) fw.edges.emplace_back(k, (k + 1) % n);
    fw.validate();
    out.fw_exact = fw;
    out.fw = to_floating(fw);
    out.provenance = {{"id", "cycle"}, {"count", n}, {"approximate", false}};
    return out;
}

namespace detail {

inline std::vector<std::array<int, 3>> antiprism_faces() {
    // bottom 0,1,2; top 3,4,5; T_k adjacent to B_k and B_{k+1}
    std::vector<std::array<int, 3>> faces;
    faces.push_back({0, 1, 2});
    for (int k = 0; k < 3; ++k) faces.push_back({3 + k, 3 + (k + 1) % 3, (k + 1) % 3});
    faces.push_back({3, 4, 5});
    for (int k = 0; k < 3; ++k) faces.push_back({k, (k + 1) % 3, 3 + k});
    return faces;
}

} // namespace detail

/// Triangular antiprism octahedron. The top base sits at 60 deg + twist from
/// the bottom base, so twist = 0 is the regular antiprism and twist = 90 is
/// the flexible configuration with the four black face planes concurrent.
/// twist = 60 is emitted as a nearby rational framework (approximate: true)
/// so that exact-mode analysis applies; being rigid, it tolerates snapping.
inline GeneratedExample make_twisted_octahedron(double radius, double height, double twist_deg) {
    if (!(radius > 0.0) || !(height != 0.0))
        throw InvalidParameters("octahedron needs positive radius and nonzero height");
    GeneratedExample out;
    Framework<double> fw;
    fw.dim = 3;
    fw.geometry = Geometry::euclidean;
    const double offset = 60.0 + twist_deg;
    for (int k = 0; k < 3; ++k) {
        const double a = M_PI / 180.0 * (120.0 * k);
        fw.vertices.push_back({radius * std::cos(a), radius * std::sin(a), 0.0});
    }
    for (int k = 0; k < 3; ++k) {
        const double a = M_PI / 180.0 * (offset + 120.0 * k);
        fw.vertices.push_back({radius * std::cos(a), radius * std::sin(a), height});
    }
    fw.edges = {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}};
    for (int k = 0; k < 3; ++k) {
        fw.edges.emplace_back(3 + k, k);
        fw.edges.emplace_back(3 + k, (k + 1) % 3);
    }

    bool approximate = false;
    if (twist_deg == 60.0) {
        Framework<Rational> snapped;
        snapped.dim = 3;
        snapped.geometry = Geometry::euclidean;
        snapped.edges = fw.edges;
        for (const auto& v : fw.vertices) {
            Vector<Rational> w(3);
            for (int a = 0; a < 3; ++a) w[a] = detail::snap_rational(v[a]);
            snapped.vertices.push_back(std::move(w));
        }
        snapped.validate();
        out.fw_exact = snapped;
        fw = to_floating(snapped);
        approximate = true;
    }
    fw.validate();
    out.fw = fw;
    out.faces = detail::antiprism_faces();
    out.black_faces = {out.faces[0], out.faces[1], out.faces[2], out.faces[3]};
    out.provenance = {{"id", "twisted_octahedron"},
                      {"radius", radius},
                      {"height", height},
                      {"twist", twist_deg},
                      {"approximate", approximate}};
    return out;
}

/// Flexible octahedron with rational coordinates: a planar quadrilateral
/// A, B, C, D plus two apexes N, S chosen so that the four black face planes
/// share a point (S lies in the plane spanned by N and the two diagonal
/// intersection points of the quad). dof = 1 exactly.
inline GeneratedExample make_liebmann_octahedron() {
    GeneratedExample out;
    Framework<Rational> fw;
    fw.dim = 3;
    fw.geometry = Geometry::euclidean;
    fw.vertices = {{Rational(2), Rational(0), Rational(0)},
                   {Rational(0), Rational(1), Rational(0)},
                   {Rational(-1), Rational(0), Rational(0)},
                   {Rational(0), Rational(-1), Rational(0)},
                   {Rational(0), Rational(0), Rational(2)},
                   {Rational(-6), Rational(1), Rational(-1)}};
    fw.labels = {"A", "B", "C", "D", "N", "S"};
    fw.edges = {{0, 1}, {1, 2}, {2, 3}, {3, 0},
                {4, 0}, {4, 1}, {4, 2}, {4, 3},
                {5, 0}, {5, 1}, {5, 2}, {5, 3}};
    fw.validate();
    out.fw_exact = fw;
    out.fw = to_floating(fw);
    out.faces = {{4, 0, 1}, {4, 1, 2}, {4, 2, 3}, {4, 3, 0},
                 {5, 0, 1}, {5, 1, 2}, {5, 2, 3}, {5, 3, 0}};
    out.black_faces = {{4, 0, 1}, {4, 2, 3}, {5, 1, 2}, {5, 3, 0}};
    out.provenance = {{"id", "liebmann_octahedron"},
                      {"coplanar_vertices", {"A", "B", "C", "D"}},
                      {"approximate", false}};
    return out;
}

/// Two triangles with matching edges. concurrent: the inner triangle is a
/// central similarity image, so the three matching lines meet; at_infinity
/// instead translates the inner copy (lines parallel). concurrent = false
/// perturbs one inner vertex, which breaks the flex.
inline GeneratedExample make_desargues(bool concurrent, bool at_infinity) {
    GeneratedExample out;
    Framework<Rational> fw;
    fw.dim = 2;
    fw.geometry = Geometry::euclidean;
    const std::vector<Vector<Rational>> outer = {{Rational(0), Rational(0)},
                                                 {Rational(4), Rational(0)},
                                                 {Rational(0), Rational(4)}};
    std::vector<Vector<Rational>> inner;
    if (concurrent && at_infinity) {
        const Vector<Rational> shift = {Rational(5), Rational(2)};
        for (const auto& p : outer) inner.push_back(add(p, shift));
    } else {
        // center (1, 1), ratio 1/2
        const Vector<Rational> center = {Rational(1), Rational(1)};
        for (const auto& p : outer) {
            Vector<Rational> q = center;
            q[0] += (p[0] - center[0]) / 2;
            q[1] += (p[1] - center[1]) / 2;
            inner.push_back(std::move(q));
        }
        if (!concurrent) inner[0][0] += Rational(1, 7);
    }
    fw.vertices = outer;
    fw.vertices.insert(fw.vertices.end(), inner.begin(), inner.end());
    fw.edges = {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {0, 3}, {1, 4}, {2, 5}};
    fw.validate();
    out.fw_exact = fw;
    out.fw = to_floating(fw);
    out.provenance = {{"id", "desargues"},
                      {"concurrent", concurrent},
                      {"at_infinity", at_infinity},
                      {"approximate", false}};
    return out;
}

/// Complete bipartite framework with both colour classes on a central
/// quadric (unit circle/sphere by default, optionally with semi-axes).
/// Inscribed bipartite frameworks are flexible; the witness flex moves the
/// white class along -grad Q and the black class along +grad Q.
inline GeneratedExample make_bipartite_quadric(int m, int n, std::vector<double> axes) {
    if (m < 1 || n < 1) throw InvalidParameters("bipartite class sizes must be >= 1");
    const int d = axes.empty() ? 2 : static_cast<int>(axes.size());
    if (d != 2 && d != 3) throw InvalidParameters("bipartite quadric supports d = 2 or 3");
    std::vector<Rational> ax(d, Rational(1));
    for (int a = 0; a < static_cast<int>(axes.size()); ++a) {
        ax[a] = detail::snap_rational(axes[a]);
        if (!(ax[a] > 0)) throw InvalidParameters("semi-axes must be positive");
    }

    GeneratedExample out;
    Framework<Rational> fw;
    fw.dim = d;
    fw.geometry = Geometry::euclidean;

    // distinct rational parameters; white first, black second
    std::vector<Vector<Rational>> pts;
    if (d == 2) {
        // tan-half values 0, 1, -1, 2, -2, ... give distinct circle points
        std::vector<Rational> ts;
        for (int k = 0; static_cast<int>(ts.size()) < m + n; ++k) {
            if (k == 0) {
                ts.push_back(Rational(0));
            } else {
                ts.push_back(Rational(k));
                if (static_cast<int>(ts.size()) < m + n) ts.push_back(Rational(-k));
            }
        }
        for (const auto& t : ts) pts.push_back(detail::circle_point(t));
    } else {
        std::vector<std::pair<Rational, Rational>> tus;
        for (int k = 0; static_cast<int>(tus.size()) < m + n; ++k) {
            tus.emplace_back(Rational(k), Rational(k % 3));
            if (static_cast<int>(tus.size()) < m + n && k > 0)
                tus.emplace_back(Rational(-k), Rational(1 + (k % 2)));
        }
        for (const auto& [t, u] : tus) pts.push_back(detail::sphere_point(t, u));
    }
    for (auto& p : pts)
        for (int a = 0; a < d; ++a) p[a] = p[a] * ax[a];
    fw.vertices = pts;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) fw.edges.emplace_back(i, m + j);
    fw.validate();
    out.fw_exact = fw;
    out.fw = to_floating(fw);

    // radial flex: q = -+ M p with M = diag(ax^-2); exact kernel member
    VelocityField<Rational> flex;
    for (int i = 0; i < m + n; ++i) {
        Vector<Rational> q(d);
        for (int a = 0; a < d; ++a) {
            const Rational grad = fw.vertices[i][a] / (ax[a] * ax[a]);
            q[a] = i < m ? Rational(-grad) : grad;
        }
        flex.push_back(std::move(q));
    }
    out.known_flex = std::move(flex);
    out.provenance = {{"id", "bipartite_quadric"},
                      {"white", m},
                      {"black", n},
                      {"dimension", d},
                      {"approximate", false}};
    return out;
}

inline GeneratedExample make_example(const ExampleSpec& spec) {
    if (spec.id == "simplex") return make_simplex(spec.dimension);
    if (spec.id == "cycle") return make_cycle(spec.count);
    if (spec.id == "twisted_octahedron")
        return make_twisted_octahedron(spec.radius, spec.height, spec.twist_deg);
    if (spec.id == "liebmann_octahedron") return make_liebmann_octahedron();
    if (spec.id == "desargues") return make_desargues(spec.concurrent, spec.at_infinity);
    if (spec.id == "bipartite_quadric")
        return make_bipartite_quadric(spec.count, spec.count2, spec.axes);
    throw InvalidParameters("unknown example id '" + spec.id + "'");
}

/// Full catalog document: framework plus provenance (and face data for the
/// octahedra).
inline json example_to_json(const GeneratedExample& ex) {
    json doc = ex.fw_exact ? framework_to_json(*ex.fw_exact) : framework_to_json(ex.fw);
    doc["provenance"] = ex.provenance;
    if (!ex.faces.empty()) {
        json faces = json::array();
        for (const auto& f : ex.faces) faces.push_back(json::array({f[0], f[1], f[2]}));
        doc["faces"] = std::move(faces);
        json black = json::array();
        for (const auto& f : ex.black_faces) black.push_back(json::array({f[0], f[1], f[2]}));
        doc["black_faces"] = std::move(black);
    }
    return doc;
}

// ---------------------------------------------------------------------------
// Blaschke four-plane test

namespace detail {

/// The three antipodal (non-adjacent) vertex pairs of an octahedral graph,
/// or NotOctahedral.
template <class T>
std::array<std::pair<int, int>, 3> octahedron_pairs(const Framework<T>& fw) {
    if (fw.vertex_count() != 6 || fw.edge_count() != 12)
        throw NotOctahedral("octahedron graphs have 6 vertices and 12 edges");
    bool adj[6][6] = {};
    for (const auto& [i, j] : fw.edges) adj[i][j] = adj[j][i] = true;
    std::array<std::pair<int, int>, 3> pairs;
    std::array<bool, 6> used{};
    int np = 0;
    for (int i = 0; i < 6; ++i) {
        if (used[i]) continue;
        int partner = -1;
        for (int j = 0; j < 6; ++j) {
            if (j == i || used[j] || adj[i][j]) continue;
            if (partner != -1) throw NotOctahedral("vertex has two non-neighbours");
            partner = j;
        }
        if (partner == -1) throw NotOctahedral("vertex has no antipodal partner");
        used[i] = used[partner] = true;
        pairs[np++] = {i, partner};
    }
    if (np != 3) throw NotOctahedral("non-adjacency is not a perfect matching");
    return pairs;
}

} // namespace detail

/// True iff the planes of the four given black faces have a common point,
/// possibly at infinity: the 4x4 matrix of homogeneous plane equations has
/// rank <= 3. The face set must be a parity class of the proper 2-colouring.
template <class T>
bool blaschke_check(const Framework<T>& fw, const std::vector<std::array<int, 3>>& black,
                    const TolerancePolicy& tol = {}) {
    if (fw.dim != 3) throw NotOctahedral("the four-plane test lives in dimension 3");
    const auto pairs = detail::octahedron_pairs(fw);
    int pair_of[6], side_of[6];
    for (int k = 0; k < 3; ++k) {
        pair_of[pairs[k].first] = pair_of[pairs[k].second] = k;
        side_of[pairs[k].first] = 0;
        side_of[pairs[k].second] = 1;
    }
    if (black.size() != 4) throw ImproperColoring("exactly four black faces required");
    int expected_parity = -1;
    for (const auto& f : black) {
        bool seen_pair[3] = {};
        int parity = 0;
        for (int v : f) {
            if (v < 0 || v >= 6) throw ImproperColoring("face vertex out of range");
            if (seen_pair[pair_of[v]]) throw ImproperColoring("face uses an antipodal pair");
            seen_pair[pair_of[v]] = true;
            parity ^= side_of[v];
        }
        if (expected_parity == -1) expected_parity = parity;
        if (parity != expected_parity)
            throw ImproperColoring("black faces are not a parity class of the 2-colouring");
    }

    Matrix<T> planes(4, 4);
    for (int r = 0; r < 4; ++r) {
        const Vector<T>& p = fw.vertices[black[r][0]];
        const Vector<T>& q = fw.vertices[black[r][1]];
        const Vector<T>& s = fw.vertices[black[r][2]];
        const Vector<T> u = sub(q, p);
        const Vector<T> v = sub(s, p);
        const Vector<T> nrm = {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2],
                               u[0] * v[1] - u[1] * v[0]};
        if (all_zero(nrm)) throw NotOctahedral("degenerate (collinear) face");
        for (int c = 0; c < 3; ++c) planes(r, c) = nrm[c];
        planes(r, 3) = -dot(nrm, p);
    }
    return rank_of(planes, tol) <= 3;
}

} // namespace rigid
