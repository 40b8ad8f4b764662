#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "rigid/exterior.hpp"
#include "rigid/framework.hpp"
#include "rigid/linalg.hpp"

namespace rigid {

/// Edge-by-vertex constraint matrix. Euclidean: one row per edge, d columns
/// per vertex, with the block p_i - p_j under vertex i and its negative
/// under vertex j. Hyperbolic/spherical: d+1 columns per vertex, the edge
/// rows carry metric-weighted differences and are followed by one tangency
/// row per vertex. The kernel is the space of infinitesimal motions.
template <class T>
struct RigidityMatrix {
    Matrix<T> mat;
    Geometry geometry = Geometry::euclidean;
    std::size_t edge_rows = 0;
    std::size_t coords_per_vertex = 0;
    /// First tangency row and row count; empty for Euclidean frameworks.
    std::optional<std::pair<std::size_t, std::size_t>> tangency_row_range;
};

namespace detail {

/// Metric weight of coordinate a: -1 for spatial hyperbolic coordinates.
template <class T>
T metric_weight(Geometry g, std::size_t a) {
    return (g == Geometry::hyperbolic && a > 0) ? T(-1) : T(1);
}

} // namespace detail

template <class T>
RigidityMatrix<T> rigidity_matrix(const Framework<T>& fw) {
    RigidityMatrix<T> out;
    out.geometry = fw.geometry;
    out.edge_rows = fw.edge_count();
    out.coords_per_vertex = static_cast<std::size_t>(fw.ambient_len());
    const std::size_t cols = fw.vertex_count() * out.coords_per_vertex;
    const bool curved = fw.geometry != Geometry::euclidean;
    const std::size_t rows = out.edge_rows + (curved ? fw.vertex_count() : 0);
    out.mat = Matrix<T>(rows, cols);

    for (std::size_t e = 0; e < fw.edges.size(); ++e) {
        const auto& [i, j] = fw.edges[e];
        for (std::size_t a = 0; a < out.coords_per_vertex; ++a) {
            const T diff = fw.vertices[i][a] - fw.vertices[j][a];
            const T w = detail::metric_weight<T>(fw.geometry, a) * diff;
            out.mat(e, i * out.coords_per_vertex + a) = w;
            out.mat(e, j * out.coords_per_vertex + a) = -w;
        }
    }
    if (curved) {
        out.tangency_row_range = {out.edge_rows, fw.vertex_count()};
        for (std::size_t v = 0; v < fw.vertex_count(); ++v)
            for (std::size_t a = 0; a < out.coords_per_vertex; ++a)
                out.mat(out.edge_rows + v, v * out.coords_per_vertex + a) =
                    detail::metric_weight<T>(fw.geometry, a) * fw.vertices[v][a];
    }
    return out;
}

/// Spanning set (not yet a basis) of restrictions of ambient infinitesimal
/// isometries: translations plus skew rotations in the Euclidean case,
/// q_i = A p_i with A g + g A^T = 0 in the curved cases.
template <class T>
std::vector<VelocityField<T>> trivial_motion_generators(const Framework<T>& fw) {
    std::vector<VelocityField<T>> gens;
    const std::size_t n = fw.vertex_count();
    if (fw.geometry == Geometry::euclidean) {
        const std::size_t d = static_cast<std::size_t>(fw.dim);
        for (std::size_t a = 0; a < d; ++a) {
            VelocityField<T> g(n, Vector<T>(d, T(0)));
            for (std::size_t i = 0; i < n; ++i) g[i][a] = T(1);
            gens.push_back(std::move(g));
        }
        for (std::size_t a = 0; a + 1 < d; ++a)
            for (std::size_t b = a + 1; b < d; ++b) {
                VelocityField<T> g(n, Vector<T>(d, T(0)));
                for (std::size_t i = 0; i < n; ++i) {
                    g[i][a] = fw.vertices[i][b];
                    g[i][b] = -fw.vertices[i][a];
                }
                gens.push_back(std::move(g));
            }
    } else {
        const std::size_t m = static_cast<std::size_t>(fw.ambient_len());
        for (std::size_t a = 0; a + 1 < m; ++a)
            for (std::size_t b = a + 1; b < m; ++b) {
                // A = g (E_ab - E_ba): q[a] = g_a p_b, q[b] = -g_b p_a.
                VelocityField<T> g(n, Vector<T>(m, T(0)));
                for (std::size_t i = 0; i < n; ++i) {
                    g[i][a] = detail::metric_weight<T>(fw.geometry, a) * fw.vertices[i][b];
                    g[i][b] = -detail::metric_weight<T>(fw.geometry, b) * fw.vertices[i][a];
                }
                gens.push_back(std::move(g));
            }
    }
    return gens;
}

/// Basis of the trivial-motion space: orthonormal in floating mode,
/// echelon rows in exact mode.
template <class T>
std::vector<VelocityField<T>> trivial_motions(const Framework<T>& fw,
                                              const TolerancePolicy& tol = {}) {
    const auto gens = trivial_motion_generators(fw);
    if (gens.empty()) return {};
    Matrix<T> g(gens.size(), flatten(gens[0]).size());
    for (std::size_t r = 0; r < gens.size(); ++r) g.set_row(r, flatten(gens[r]));
    std::vector<VelocityField<T>> basis;
    for (const auto& row : row_space_basis(g, tol))
        basis.push_back(unflatten(row, fw.vertex_count()));
    return basis;
}

template <class T>
struct KinematicReport {
    std::size_t dim_motions = 0;
    std::size_t dim_trivial = 0;
    long dof = 0;
    bool rigid = false;
    bool degenerate_span = false;
    std::vector<VelocityField<T>> motion_basis;
    std::vector<VelocityField<T>> trivial_basis;
    std::vector<double> singular_values;
};

template <class T>
KinematicReport<T> analyze_kinematics(const Framework<T>& fw, const TolerancePolicy& tol = {}) {
    fw.validate();
    KinematicReport<T> rep;
    const auto R = rigidity_matrix(fw);
    auto kn = rank_nullspace(R.mat, tol);
    rep.dim_motions = kn.nullity();
    rep.singular_values = std::move(kn.singular_values);
    for (const auto& v : kn.kernel) rep.motion_basis.push_back(unflatten(v, fw.vertex_count()));
    rep.trivial_basis = trivial_motions(fw, tol);
    rep.dim_trivial = rep.trivial_basis.size();
    rep.dof = static_cast<long>(rep.dim_motions) - static_cast<long>(rep.dim_trivial);
    rep.rigid = rep.dof == 0;
    if (fw.geometry == Geometry::euclidean) {
        rep.degenerate_span = affine_span_dim(fw, tol) < static_cast<std::size_t>(fw.dim);
    } else {
        // analogue: ambient position vectors should span R^{d+1}
        Matrix<T> pts(fw.vertex_count(), fw.ambient_len());
        for (std::size_t i = 0; i < fw.vertex_count(); ++i) pts.set_row(i, fw.vertices[i]);
        rep.degenerate_span = rank_of(pts, tol) < static_cast<std::size_t>(fw.ambient_len());
    }
    return rep;
}

// ---------------------------------------------------------------------------
// statics (Euclidean)

/// The load F^{ij}: f_i = p_i - p_j, f_j = p_j - p_i, zero elsewhere. These
/// span the resolvable loads when ij runs over the edges, and they are
/// equilibrium loads for every vertex pair.
template <class T>
Load<T> edge_load(const Framework<T>& fw, int i, int j) {
    if (fw.geometry != Geometry::euclidean)
        throw GeometryMismatch("edge loads are defined for Euclidean frameworks");
    Load<T> F(fw.vertex_count(), Vector<T>(fw.dim, T(0)));
    F[i] = sub(fw.vertices[i], fw.vertices[j]);
    F[j] = sub(fw.vertices[j], fw.vertices[i]);
    return F;
}

/// Virtual-work pairing <Q, F> = sum_i <q_i, f_i>.
template <class T>
T pairing(const VectorField<T>& Q, const VectorField<T>& F) {
    if (Q.size() != F.size()) throw DimensionMismatch("pairing of fields over different vertex sets");
    T acc(0);
    for (std::size_t i = 0; i < Q.size(); ++i) acc += dot(Q[i], F[i]);
    return acc;
}

/// Total force system of a load as a bivector: sum_i (1,p_i) ^ (0,f_i).
template <class T>
Bivector<T> total_load_bivector(const Framework<T>& fw, const Load<T>& F) {
    if (fw.geometry != Geometry::euclidean)
        throw GeometryMismatch("bivector totals are defined for Euclidean frameworks");
    if (F.size() != fw.vertex_count()) throw DimensionMismatch("load size != vertex count");
    Bivector<T> total(fw.dim + 1);
    for (std::size_t i = 0; i < F.size(); ++i) {
        if (F[i].size() != static_cast<std::size_t>(fw.dim))
            throw DimensionMismatch("load vector has wrong dimension");
        Vector<T> ph = homogeneous_lift(fw, i);
        Vector<T> fh(fw.dim + 1, T(0));
        for (int a = 0; a < fw.dim; ++a) fh[a + 1] = F[i][a];
        total += wedge(ph, fh);
    }
    return total;
}

/// True iff the total bivector vanishes (exactly in exact mode, within a
/// scale-relative band in floating mode).
template <class T>
bool is_equilibrium_load(const Framework<T>& fw, const Load<T>& F,
                         double rel = tolerances::equilibrium_relative) {
    const Bivector<T> total = total_load_bivector(fw, F);
    if constexpr (is_exact_v<T>) {
        return total.is_zero_exact();
    } else {
        double scale = 0.0;
        for (std::size_t i = 0; i < F.size(); ++i) {
            Vector<T> ph = homogeneous_lift(fw, i);
            Vector<T> fh(fw.dim + 1, T(0));
            for (int a = 0; a < fw.dim; ++a) fh[a + 1] = F[i][a];
            scale += bivector_scale(wedge(ph, fh));
        }
        return bivector_scale(total) <= rel * scale;
    }
}

/// Matrix of the map Load -> Lambda^2 R^{d+1}; its kernel is the space of
/// equilibrium loads.
template <class T>
Matrix<T> equilibrium_matrix(const Framework<T>& fw) {
    if (fw.geometry != Geometry::euclidean)
        throw GeometryMismatch("equilibrium matrix is defined for Euclidean frameworks");
    const std::size_t d = static_cast<std::size_t>(fw.dim);
    Matrix<T> m(pair_count(d + 1), fw.vertex_count() * d);
    for (std::size_t i = 0; i < fw.vertex_count(); ++i) {
        const Vector<T> ph = homogeneous_lift(fw, i);
        for (std::size_t a = 0; a < d; ++a) {
            Vector<T> fh(d + 1, T(0));
            fh[a + 1] = T(1);
            const Bivector<T> col = wedge(ph, fh);
            for (std::size_t r = 0; r < col.c.size(); ++r) m(r, i * d + a) = col.c[r];
        }
    }
    return m;
}

template <class T>
struct ResolveResult {
    bool resolved = false;
    Stress<T> stress;
    T residual_sq = T(0);
    double residual_norm() const { return std::sqrt(std::max(0.0, to_double(residual_sq))); }
};

/// Minimum-norm stress resolving F when one exists: solves R^T w = F in the
/// least-squares sense and applies the relative residual verdict.
template <class T>
ResolveResult<T> resolve_load(const Framework<T>& fw, const Load<T>& F,
                              const TolerancePolicy& tol = {}) {
    if (fw.geometry != Geometry::euclidean)
        throw GeometryMismatch("load resolution is defined for Euclidean frameworks");
    const auto R = rigidity_matrix(fw);
    const Matrix<T> Rt = R.mat.transposed();
    const Vector<T> b = flatten(F);
    if (b.size() != Rt.rows()) throw DimensionMismatch("load has wrong total dimension");
    auto ls = least_squares(Rt, b, tol);
    ResolveResult<T> out;
    out.stress.values = std::move(ls.solution);
    out.residual_sq = ls.residual_sq;
    if constexpr (is_exact_v<T>) {
        out.resolved = is_zero(out.residual_sq);
    } else {
        out.resolved = out.residual_norm() <= tolerances::resolve_relative * norm(b);
    }
    return out;
}

template <class T>
struct StaticReport {
    std::size_t dim_equilibrium = 0;
    std::size_t dim_resolvable = 0;
    long static_dof = 0;
};

/// dim F_eq from the nullity of the total-bivector map (the closed formula
/// d|V| - C(d+1,2) is a theorem about it, tested elsewhere, not assumed);
/// dim F_res as the rank of the rigidity matrix.
template <class T>
StaticReport<T> analyze_statics(const Framework<T>& fw, const TolerancePolicy& tol = {}) {
    if (fw.geometry != Geometry::euclidean)
        throw GeometryMismatch("static analysis is defined for Euclidean frameworks");
    if (affine_span_dim(fw, tol) < static_cast<std::size_t>(fw.dim))
        throw DegenerateSpan("static analysis requires vertices to span the space affinely");
    StaticReport<T> rep;
    const Matrix<T> eq = equilibrium_matrix(fw);
    rep.dim_equilibrium = eq.cols() - rank_of(eq, tol);
    rep.dim_resolvable = rank_of(rigidity_matrix(fw).mat, tol);
    rep.static_dof =
        static_cast<long>(rep.dim_equilibrium) - static_cast<long>(rep.dim_resolvable);
    return rep;
}

// ---------------------------------------------------------------------------
// residual helpers shared by tests and the verification suites

/// Per-edge first-order length change <p_i - p_j, q_i - q_j> in the ambient
/// form of the framework's geometry.
template <class T>
Vector<T> edge_constraint_values(const Framework<T>& fw, const VelocityField<T>& Q) {
    if (Q.size() != fw.vertex_count()) throw DimensionMismatch("field size != vertex count");
    Vector<T> out;
    out.reserve(fw.edge_count());
    for (const auto& [i, j] : fw.edges) {
        const Vector<T> dp = sub(fw.vertices[i], fw.vertices[j]);
        const Vector<T> dq = sub(Q[i], Q[j]);
        if (fw.geometry == Geometry::euclidean)
            out.push_back(dot(dp, dq));
        else
            out.push_back(ambient_inner(fw.geometry, dp, dq));
    }
    return out;
}

template <class T>
Vector<T> tangency_values(const Framework<T>& fw, const VelocityField<T>& Q) {
    Vector<T> out;
    if (fw.geometry == Geometry::euclidean) return out;
    for (std::size_t i = 0; i < fw.vertex_count(); ++i)
        out.push_back(ambient_inner(fw.geometry, fw.vertices[i], Q[i]));
    return out;
}

/// Scale-relative residual of Q against the framework's constraints,
/// max over edges (and tangency rows for curved geometries).
template <class T>
double motion_residual(const Framework<T>& fw, const VelocityField<T>& Q) {
    double scale = 0.0;
    for (const auto& p : fw.vertices) scale = std::max(scale, max_abs(p));
    double qscale = 0.0;
    for (const auto& q : Q) qscale = std::max(qscale, max_abs(q));
    const double denom = std::max(1e-300, scale * qscale);
    double worst = 0.0;
    for (const T& v : edge_constraint_values(fw, Q))
        worst = std::max(worst, std::abs(to_double(v)));
    for (const T& v : tangency_values(fw, Q))
        worst = std::max(worst, std::abs(to_double(v)));
    return worst / denom;
}

template <class T>
bool is_infinitesimal_motion(const Framework<T>& fw, const VelocityField<T>& Q,
                             double rel = tolerances::motion_residual) {
    if constexpr (is_exact_v<T>) {
        return all_zero(edge_constraint_values(fw, Q)) && all_zero(tangency_values(fw, Q));
    } else {
        return motion_residual(fw, Q) <= rel;
    }
}

} // namespace rigid
