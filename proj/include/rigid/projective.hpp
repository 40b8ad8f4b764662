#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "rigid/exterior.hpp"
#include "rigid/framework.hpp"
#include "rigid/linalg.hpp"
#include "rigid/rigidity.hpp"

namespace rigid {

/// Projective map of RP^d given by an invertible (d+1)x(d+1) matrix acting
/// on homogeneous coordinates (index 0 first). Row 0 is the functional
/// ell(p) = (M p_hom)^0 whose zero set is the hyperplane L sent to infinity;
/// transports are normalised as if ell were rescaled to unit spatial
/// gradient, which only ever enters through the rational quantity |grad|^2.
template <class T>
class ProjectiveMap {
public:
    explicit ProjectiveMap(Matrix<T> m) : m_(std::move(m)) {
        if (m_.rows() != m_.cols() || m_.rows() < 2)
            throw SchemaError("projective map matrix must be square, at least 2x2");
        if constexpr (is_exact_v<T>) {
            if (is_zero(determinant(m_))) throw SingularMap("projective map matrix is singular");
        } else {
            Eigen::FullPivLU<Eigen::MatrixXd> lu(detail::to_eigen(m_));
            if (!lu.isInvertible()) throw SingularMap("projective map matrix is singular");
        }
    }

    const Matrix<T>& matrix() const { return m_; }
    int spatial_dim() const { return static_cast<int>(m_.rows()) - 1; }

    /// ell(p) for a spatial point p (the 0-th homogeneous output coordinate).
    T ell(const Vector<T>& p) const {
        check_point(p);
        T acc = m_(0, 0);
        for (std::size_t a = 0; a < p.size(); ++a) acc += m_(0, a + 1) * p[a];
        return acc;
    }

    /// Spatial gradient of ell and its squared norm.
    Vector<T> infinity_gradient() const {
        Vector<T> g(spatial_dim());
        for (int a = 0; a < spatial_dim(); ++a) g[a] = m_(0, a + 1);
        return g;
    }
    T gradient_norm_sq() const { return norm_sq(infinity_gradient()); }
    double gradient_norm() const { return std::sqrt(to_double(gradient_norm_sq())); }

    /// True when ell is constant on E^d, i.e. the map is affine.
    bool affine() const {
        const Vector<T> g = infinity_gradient();
        if constexpr (is_exact_v<T>) {
            return all_zero(g);
        } else {
            double mscale = 0.0;
            for (double x : m_.data()) mscale = std::max(mscale, std::abs(x));
            return max_abs(g) <= 1e-13 * mscale;
        }
    }

    /// Image of a spatial point; throws PointAtInfinity when ell(p) ~ 0.
    Vector<T> image_point(const Vector<T>& p) const {
        const T lp = ell(p);
        if (at_infinity(lp, p)) throw PointAtInfinity("point lies on the hyperplane at infinity");
        Vector<T> out(spatial_dim());
        for (int r = 0; r < spatial_dim(); ++r) {
            T acc = m_(r + 1, 0);
            for (int c = 0; c < spatial_dim(); ++c) acc += m_(r + 1, c + 1) * p[c];
            out[r] = acc / lp;
        }
        return out;
    }

    /// Differential dPhi_p as a d x d matrix, from the quotient rule on the
    /// dehomogenisation (no finite differences anywhere).
    Matrix<T> jacobian(const Vector<T>& p) const {
        const T lp = ell(p);
        if (at_infinity(lp, p)) throw PointAtInfinity("differential undefined on L");
        const Vector<T> phi = image_point(p);
        const Vector<T> g = infinity_gradient();
        Matrix<T> J(spatial_dim(), spatial_dim());
        for (int r = 0; r < spatial_dim(); ++r)
            for (int c = 0; c < spatial_dim(); ++c)
                J(r, c) = (m_(r + 1, c + 1) - phi[r] * g[c]) / lp;
        return J;
    }

    bool at_infinity(const T& lp, const Vector<T>& p) const {
        if constexpr (is_exact_v<T>) {
            static_cast<void>(p);
            return is_zero(lp);
        } else {
            double scale = 0.0;
            for (int a = 0; a <= spatial_dim(); ++a) scale = std::max(scale, std::abs(m_(0, a)));
            scale *= std::max(1.0, max_abs(p));
            return std::abs(lp) <= 1e-12 * scale;
        }
    }

private:
    void check_point(const Vector<T>& p) const {
        if (static_cast<int>(p.size()) != spatial_dim())
            throw DimensionMismatch("point dimension does not match map");
    }

    Matrix<T> m_;
};

/// Signed Euclidean distance from p to the hyperplane L = {ell = 0}.
/// Affine maps have no finite L; callers must branch to the affine pathway.
template <class T>
double h_infinity(const ProjectiveMap<T>& phi, const Vector<T>& p) {
    if (phi.affine()) throw AffineMap("affine map sends no finite hyperplane to infinity");
    return to_double(phi.ell(p)) / phi.gradient_norm();
}

/// Projective image of a Euclidean framework; every vertex must stay finite.
template <class T>
Framework<T> apply_projective(const ProjectiveMap<T>& phi, const Framework<T>& fw) {
    if (fw.geometry != Geometry::euclidean)
        throw GeometryMismatch("projective images are taken of Euclidean frameworks");
    if (phi.spatial_dim() != fw.dim)
        throw DimensionMismatch("map dimension does not match framework");
    Framework<T> out;
    out.dim = fw.dim;
    out.geometry = Geometry::euclidean;
    out.edges = fw.edges;
    out.labels = fw.labels;
    for (std::size_t i = 0; i < fw.vertex_count(); ++i) {
        const T lp = phi.ell(fw.vertices[i]);
        if (phi.at_infinity(lp, fw.vertices[i]))
            throw VertexAtInfinity("vertex " + std::to_string(i) + " maps to infinity");
        out.vertices.push_back(phi.image_point(fw.vertices[i]));
    }
    out.validate();
    return out;
}

/// Static transport of a force vector at p: h_L^2(p) dPhi_p(f), with the
/// unit-gradient normalisation folded in as |grad|^-2. Affine maps use the
/// plain linear transport f -> A f instead.
template <class T>
Vector<T> phi_stat(const ProjectiveMap<T>& phi, const Vector<T>& p, const Vector<T>& f) {
    const int d = phi.spatial_dim();
    if (static_cast<int>(f.size()) != d) throw DimensionMismatch("force dimension mismatch");
    if (phi.affine()) {
        Vector<T> out(d, T(0));
        const T m00 = phi.matrix()(0, 0);
        for (int r = 0; r < d; ++r) {
            T acc(0);
            for (int c = 0; c < d; ++c) acc += phi.matrix()(r + 1, c + 1) * f[c];
            out[r] = acc / m00;
        }
        return out;
    }
    const T lp = phi.ell(p);
    if (phi.at_infinity(lp, p)) throw PointAtInfinity("phi_stat at a point on L");
    const Matrix<T> J = phi.jacobian(p);
    const T hsq = (lp * lp) / phi.gradient_norm_sq();
    return scaled(J.apply(f), hsq);
}

/// Secant form of the static transport (application point and vector tip
/// both mapped, scaled by the product of distances to L). Used as an
/// independent oracle against phi_stat; requires p + f off L as well.
template <class T>
Vector<T> phi_stat_secant(const ProjectiveMap<T>& phi, const Vector<T>& p, const Vector<T>& f) {
    if (phi.affine()) throw AffineMap("secant form needs a finite hyperplane");
    const Vector<T> pf = add(p, f);
    const T lp = phi.ell(p);
    const T lpf = phi.ell(pf);
    if (phi.at_infinity(lp, p) || phi.at_infinity(lpf, pf))
        throw PointAtInfinity("secant form hits L");
    const Vector<T> diff = sub(phi.image_point(pf), phi.image_point(p));
    return scaled(diff, T(lp * lpf / phi.gradient_norm_sq()));
}

/// Kinematic transport of a velocity vector at p: h_L^-2(p) (dPhi_p^-1)^* q.
/// Affine maps fall back to q -> (A^*)^-1 q.
template <class T>
Vector<T> phi_kin(const ProjectiveMap<T>& phi, const Vector<T>& p, const Vector<T>& q) {
    const int d = phi.spatial_dim();
    if (static_cast<int>(q.size()) != d) throw DimensionMismatch("velocity dimension mismatch");
    if (phi.affine()) {
        Matrix<T> At(d, d);
        const T m00 = phi.matrix()(0, 0);
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) At(r, c) = phi.matrix()(c + 1, r + 1) / m00;
        return solve_square(At, q);
    }
    const T lp = phi.ell(p);
    if (phi.at_infinity(lp, p)) throw PointAtInfinity("phi_kin at a point on L");
    const Matrix<T> Jt = phi.jacobian(p).transposed();
    const Vector<T> y = solve_square(Jt, q);
    return scaled(y, T(phi.gradient_norm_sq() / (lp * lp)));
}

/// Per-vertex kinematic transport; motions of fw become motions of the image.
template <class T>
VelocityField<T> transport_motion(const ProjectiveMap<T>& phi, const Framework<T>& fw,
                                  const VelocityField<T>& Q) {
    if (Q.size() != fw.vertex_count()) throw DimensionMismatch("field size != vertex count");
    VelocityField<T> out;
    out.reserve(Q.size());
    for (std::size_t i = 0; i < Q.size(); ++i)
        out.push_back(phi_kin(phi, fw.vertices[i], Q[i]));
    return out;
}

/// Per-vertex static transport; equilibrium loads stay equilibrium,
/// resolvable loads stay resolvable.
template <class T>
Load<T> transport_load(const ProjectiveMap<T>& phi, const Framework<T>& fw, const Load<T>& F) {
    if (F.size() != fw.vertex_count()) throw DimensionMismatch("load size != vertex count");
    Load<T> out;
    out.reserve(F.size());
    for (std::size_t i = 0; i < F.size(); ++i)
        out.push_back(phi_stat(phi, fw.vertices[i], F[i]));
    return out;
}

// ---------------------------------------------------------------------------
// projective velocities: elements of (Lambda^2 R^{d+1})^* / Lambda^2 x-perp

/// A projective velocity at [x]: a dual bivector representative understood
/// modulo Lambda^2 x-perp. Two classes at the same [x] agree exactly when
/// contract(x, t1 - t2) vanishes.
template <class T>
struct DualBivectorClass {
    Vector<T> base;
    DualBivector<T> rep;

    /// Deterministic representative: the orthogonal projection of rep onto
    /// the complement of Lambda^2 x-perp under the componentwise inner
    /// product, which is x-tilde ^ (contract(x, rep) / |x|^2).
    DualBivectorClass canonicalized() const {
        const T nsq = norm_sq(base);
        Vector<T> mu = contract(base, rep);
        for (auto& m : mu) m = m / nsq;
        DualBivectorClass out;
        out.base = base;
        out.rep = wedge_dual(base, mu);
        return out;
    }
};

template <class T>
bool proportional_vectors(const Vector<T>& x, const Vector<T>& y, double rel = 1e-9) {
    if (x.size() != y.size()) return false;
    double scale = max_abs(x) * max_abs(y);
    for (std::size_t a = 0; a + 1 < x.size(); ++a)
        for (std::size_t b = a + 1; b < x.size(); ++b) {
            const T w = x[a] * y[b] - x[b] * y[a];
            if constexpr (is_exact_v<T>) {
                if (!is_zero(w)) return false;
            } else {
                if (std::abs(to_double(w)) > rel * std::max(scale, 1e-300)) return false;
            }
        }
    return true;
}

template <class T>
bool classes_equal(const DualBivectorClass<T>& a, const DualBivectorClass<T>& b,
                   double rel = 1e-9) {
    if (!proportional_vectors(a.base, b.base)) return false;
    const Vector<T> diff = contract(a.base, a.rep - b.rep);
    if constexpr (is_exact_v<T>) {
        return all_zero(diff);
    } else {
        const double scale =
            max_abs(a.base) * (dual_bivector_scale(a.rep) + dual_bivector_scale(b.rep));
        return max_abs(diff) <= rel * std::max(scale, 1e-300);
    }
}

/// Euclidean velocity -> projective velocity class at (1, p): the unique
/// class with pairing((1,p) ^ (0,y), tau) = <y, q>; the representative keeps
/// zero coefficients on the purely spatial components.
template <class T>
DualBivectorClass<T> velocity_lift(const Vector<T>& p, const Vector<T>& q) {
    if (p.size() != q.size()) throw DimensionMismatch("velocity_lift dimension mismatch");
    const std::size_t d = p.size();
    DualBivectorClass<T> out;
    out.base.assign(d + 1, T(0));
    out.base[0] = T(1);
    for (std::size_t a = 0; a < d; ++a) out.base[a + 1] = p[a];
    out.rep = DualBivector<T>(d + 1);
    for (std::size_t b = 1; b <= d; ++b) out.rep.at(0, b) = q[b - 1];
    return out;
}

namespace detail {

template <class T>
Vector<T> metric_lower(Geometry g, const Vector<T>& v) {
    Vector<T> out(v.size());
    for (std::size_t a = 0; a < v.size(); ++a)
        out[a] = (g == Geometry::hyperbolic && a > 0) ? T(-v[a]) : v[a];
    return out;
}

} // namespace detail

/// Velocity lift at a model-surface point of H^d or S^d (ambient tangent
/// vector q at x). Euclidean geometry routes to the affine-slice lift.
template <class T>
DualBivectorClass<T> velocity_lift_surface(Geometry geom, const Vector<T>& x,
                                           const Vector<T>& q) {
    if (x.size() != q.size()) throw DimensionMismatch("lift dimension mismatch");
    if (geom == Geometry::euclidean) {
        if (is_zero(x[0])) throw PointAtInfinity("euclidean lift at a point with x0 = 0");
        Vector<T> p(x.size() - 1), qs(x.size() - 1);
        for (std::size_t a = 1; a < x.size(); ++a) {
            p[a - 1] = x[a] / x[0];
            qs[a - 1] = q[a];
        }
        return velocity_lift(p, qs);
    }
    const T xx = ambient_inner(geom, x, x);
    const T xq = ambient_inner(geom, x, q);
    if constexpr (is_exact_v<T>) {
        if (!is_zero(xq)) throw TangencyViolation("lifted vector is not tangent");
    } else {
        const double scale = std::max(1e-300, max_abs(x) * max_abs(q));
        if (std::abs(to_double(xq)) > tolerances::motion_residual * scale)
            throw TangencyViolation("lifted vector is not tangent");
    }
    const Vector<T> xl = detail::metric_lower(geom, x);
    const Vector<T> ql = detail::metric_lower(geom, q);
    DualBivector<T> w = wedge_dual(xl, ql);
    const T s = (geom == Geometry::hyperbolic) ? T(T(-1) / xx) : T(T(1) / xx);
    DualBivectorClass<T> out;
    out.base = x;
    out.rep = w.scaled_by(s);
    return out;
}

/// Inverse of the lifts: contract the class at the surface representative of
/// p and raise the index with the geometry's tangent metric. The hyperbolic
/// raise uses the hyperboloid's Riemannian metric, which is the negative of
/// the ambient Minkowski form on tangent vectors; this is the sign that
/// makes the central-projection velocity formulas hold as stated.
template <class T>
Vector<T> velocity_drop(const Vector<T>& point, const DualBivectorClass<T>& tau,
                        Geometry geom) {
    Vector<T> x = point;
    if (geom == Geometry::euclidean && x.size() + 1 == tau.base.size()) {
        // spatial point given; lift to the affine slice
        Vector<T> xh(x.size() + 1, T(0));
        xh[0] = T(1);
        for (std::size_t a = 0; a < x.size(); ++a) xh[a + 1] = x[a];
        x = std::move(xh);
    }
    if (x.size() != tau.base.size())
        throw DimensionMismatch("velocity_drop point dimension mismatch");
    if (!proportional_vectors(x, tau.base))
        throw BasePointMismatch("class is based at a different projective point");

    if (geom == Geometry::euclidean) {
        if (is_zero(x[0])) throw PointAtInfinity("euclidean drop at a point with x0 = 0");
        Vector<T> xs(x.size());
        for (std::size_t a = 0; a < x.size(); ++a) xs[a] = x[a] / x[0];
        const Vector<T> alpha = contract(xs, tau.rep);
        return Vector<T>(alpha.begin() + 1, alpha.end());
    }

    const T nsq = ambient_inner(geom, x, x);
    const T band = scalar_from_double<T>(tolerances::surface_residual);
    if (abs_value(T(nsq - T(1))) > band)
        throw BasePointMismatch("drop point is not on the model surface");
    Vector<T> alpha = contract(x, tau.rep);
    if (geom == Geometry::hyperbolic) {
        Vector<T> q(alpha.size());
        q[0] = -alpha[0];
        for (std::size_t a = 1; a < alpha.size(); ++a) q[a] = alpha[a];
        return q;
    }
    return alpha; // spherical: Euclidean raise is the identity on components
}

/// Projective infinitesimal-motion test: pairing(x_i ^ x_j, tau_i - tau_j)
/// must vanish on every edge. The difference of representatives is
/// well-defined because Lambda^2 x_i-perp annihilates x_i ^ x_j.
template <class T>
bool projective_motion_check(const ProjectiveFramework<T>& X,
                             const std::vector<DualBivectorClass<T>>& taus,
                             double rel = tolerances::motion_residual) {
    if (taus.size() != X.representatives.size())
        throw DimensionMismatch("one velocity class per vertex required");
    for (std::size_t i = 0; i < taus.size(); ++i)
        if (!proportional_vectors(X.representatives[i], taus[i].base))
            throw BasePointMismatch("class " + std::to_string(i) +
                                    " is not based at its vertex");
    for (const auto& [i, j] : X.edges) {
        const Bivector<T> bv = wedge(X.representatives[i], X.representatives[j]);
        const T val = pairing(bv, taus[i].rep - taus[j].rep);
        if constexpr (is_exact_v<T>) {
            if (!is_zero(val)) return false;
        } else {
            const double scale = bivector_scale(bv) * (dual_bivector_scale(taus[i].rep) +
                                                       dual_bivector_scale(taus[j].rep));
            if (std::abs(to_double(val)) > rel * std::max(scale, 1e-300)) return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// force systems

template <class T>
using ForceSystem = std::vector<std::pair<Vector<T>, Vector<T>>>; // (point, vector)

enum class ForceKind { zero, single_force, couple };

template <class T>
struct ForceReduction {
    Bivector<T> total;
    ForceKind kind = ForceKind::zero;
    Vector<T> point;  // single_force: an application point on the line of action
    Vector<T> vector; // single_force: the force vector
};

/// Reduces a Euclidean force system via its total bivector. A nonzero total
/// with a nonzero time row is a single force; a purely spatial total is a
/// couple. In d >= 3 a general system need not reduce; the decomposability
/// failure is reported as NonDecomposable (the raw total stays available in
/// the exception-free path via total_load_bivector).
template <class T>
ForceReduction<T> reduce_force_system(const ForceSystem<T>& fs, int dim,
                                      double rel = tolerances::equilibrium_relative) {
    const std::size_t n = static_cast<std::size_t>(dim) + 1;
    Bivector<T> total(n);
    double scale = 0.0;
    for (const auto& [p, f] : fs) {
        if (p.size() != static_cast<std::size_t>(dim) || f.size() != static_cast<std::size_t>(dim))
            throw DimensionMismatch("force system entries must be d-dimensional");
        Vector<T> ph(n, T(0)), fh(n, T(0));
        ph[0] = T(1);
        for (int a = 0; a < dim; ++a) {
            ph[a + 1] = p[a];
            fh[a + 1] = f[a];
        }
        const Bivector<T> w = wedge(ph, fh);
        scale += bivector_scale(w);
        total += w;
    }

    ForceReduction<T> out;
    out.total = total;
    const auto near_zero = [&](const T& v) {
        if constexpr (is_exact_v<T>) {
            return is_zero(v);
        } else {
            return std::abs(to_double(v)) <= rel * std::max(scale, 1e-300);
        }
    };

    bool zero = true;
    for (const T& v : total.c)
        if (!near_zero(v)) zero = false;
    if (zero) {
        out.kind = ForceKind::zero;
        return out;
    }

    Vector<T> f(dim, T(0));
    bool f_zero = true;
    for (int b = 1; b <= dim; ++b) {
        f[b - 1] = total.at(0, b);
        if (!near_zero(f[b - 1])) f_zero = false;
    }

    if (!f_zero) {
        // candidate application point from the spatial block: p = (S f)/|f|^2
        const T fsq = norm_sq(f);
        Vector<T> p(dim, T(0));
        for (int a = 1; a <= dim; ++a) {
            T acc(0);
            for (int b = 1; b <= dim; ++b) {
                if (a == b) continue;
                const T s = a < b ? total.at(a, b) : T(-total.at(b, a));
                acc += s * f[b - 1];
            }
            p[a - 1] = acc / fsq;
        }
        // verify the reconstruction; failure means the system does not
        // reduce to a single force
        Vector<T> ph(n, T(0)), fh(n, T(0));
        ph[0] = T(1);
        for (int a = 0; a < dim; ++a) {
            ph[a + 1] = p[a];
            fh[a + 1] = f[a];
        }
        const Bivector<T> back = wedge(ph, fh);
        for (std::size_t k = 0; k < total.c.size(); ++k)
            if (!near_zero(T(back.c[k] - total.c[k])))
                throw NonDecomposable("force system does not reduce to a single force");
        out.kind = ForceKind::single_force;
        out.point = std::move(p);
        out.vector = std::move(f);
        return out;
    }

    // purely spatial total: couple, provided it is decomposable
    if constexpr (is_exact_v<T>) {
        if (!is_decomposable_exact(total))
            throw NonDecomposable("spatial total bivector is not decomposable");
    } else {
        for (std::size_t a = 0; a + 3 < n; ++a)
            for (std::size_t b = a + 1; b + 2 < n; ++b)
                for (std::size_t cc = b + 1; cc + 1 < n; ++cc)
                    for (std::size_t e = cc + 1; e < n; ++e) {
                        const T comp = total.at(a, b) * total.at(cc, e) -
                                       total.at(a, cc) * total.at(b, e) +
                                       total.at(a, e) * total.at(b, cc);
                        if (std::abs(to_double(comp)) > rel * std::max(scale * scale, 1e-300))
                            throw NonDecomposable("spatial total bivector is not decomposable");
                    }
    }
    out.kind = ForceKind::couple;
    return out;
}

} // namespace rigid
