#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "rigid/projective.hpp"
#include "rigid/randgen.hpp"

using namespace rigid;
using R = Rational;

namespace {

const TolerancePolicy kExact = TolerancePolicy::exact();

ProjectiveMap<R> shear_map() {
    // (x0, x1, x2) -> (x0 + x1, x1, x2); L is the line {p1 = -1}
    return ProjectiveMap<R>(Matrix<R>{{R(1), R(1), R(0)}, {R(0), R(1), R(0)}, {R(0), R(0), R(1)}});
}

Framework<R> triangle() {
    Framework<R> fw;
    fw.dim = 2;
    fw.geometry = Geometry::euclidean;
    fw.vertices = {{R(0), R(0)}, {R(1), R(0)}, {R(0), R(1)}};
    fw.edges = {{0, 1}, {1, 2}, {0, 2}};
    return fw;
}

Framework<R> unit_square() {
    Framework<R> fw;
    fw.dim = 2;
    fw.geometry = Geometry::euclidean;
    fw.vertices = {{R(0), R(0)}, {R(1), R(0)}, {R(1), R(1)}, {R(0), R(1)}};
    fw.edges = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
    return fw;
}

/// Central-difference Jacobian of the dehomogenised map, as an oracle for
/// the analytic differential.
Matrix<double> fd_jacobian(const ProjectiveMap<double>& phi, const Vector<double>& p,
                           double h = 1e-6) {
    const int d = phi.spatial_dim();
    Matrix<double> J(d, d);
    for (int c = 0; c < d; ++c) {
        Vector<double> hi = p, lo = p;
        hi[c] += h;
        lo[c] -= h;
        const auto fhi = phi.image_point(hi);
        const auto flo = phi.image_point(lo);
        for (int r = 0; r < d; ++r) J(r, c) = (fhi[r] - flo[r]) / (2 * h);
    }
    return J;
}

} // namespace

TEST_CASE("projective map construction and application") {
    CHECK_THROWS_AS(ProjectiveMap<R>(Matrix<R>{{R(1), R(2)}, {R(2), R(4)}}), SingularMap);

    const auto id = ProjectiveMap<R>(Matrix<R>::identity(3));
    CHECK(id.affine());
    const auto tri = triangle();
    const auto same = apply_projective(id, tri);
    CHECK(same.vertices == tri.vertices);

    const auto sh = shear_map();
    CHECK_FALSE(sh.affine());
    CHECK(sh.image_point({R(1), R(0)}) == Vector<R>{R(1, 2), R(0)});

    Framework<R> bad = tri;
    bad.vertices[0] = {R(-1), R(5)}; // ell = 1 + p1 = 0
    CHECK_THROWS_AS(apply_projective(sh, bad), VertexAtInfinity);
}

TEST_CASE("signed distance to the hyperplane at infinity") {
    const auto sh = shear_map();
    CHECK(h_infinity(sh, {R(0), R(0)}) == 1.0);
    CHECK(h_infinity(sh, {R(-1), R(7)}) == 0.0);
    CHECK_THROWS_AS(h_infinity(ProjectiveMap<R>(Matrix<R>::identity(3)), {R(0), R(0)}),
                    AffineMap);
}

TEST_CASE("static transport frozen values and the secant identity") {
    const auto sh = shear_map();
    CHECK(phi_stat(sh, {R(0), R(0)}, {R(1), R(0)}) == Vector<R>{R(1), R(0)});
    CHECK(phi_stat(sh, {R(1), R(0)}, {R(0), R(1)}) == Vector<R>{R(0), R(2)});
    CHECK(phi_stat_secant(sh, {R(1), R(0)}, {R(0), R(1)}) == Vector<R>{R(0), R(2)});
    CHECK(all_zero(phi_stat(sh, {R(2), R(3)}, {R(0), R(0)})));

    // differential vs secant form on random probes, exactly and in floating
    // arithmetic, plus the finite-difference oracle for the Jacobian
    Rng rng(29);
    const ProjectiveMap<double> shd(convert_matrix(sh.matrix()));
    int probes = 0;
    while (probes < 60) {
        Vector<R> p = {R(rng.next_int(-4, 4)), R(rng.next_int(-4, 4))};
        Vector<R> f = {R(rng.next_int(-2, 2)), R(rng.next_int(-2, 2))};
        if (sh.ell(p) == 0 || sh.ell(add(p, f)) == 0) continue;
        ++probes;
        CHECK(phi_stat(sh, p, f) == phi_stat_secant(sh, p, f));

        Vector<double> pd = {to_double(p[0]), to_double(p[1])};
        Vector<double> fd = {to_double(f[0]), to_double(f[1])};
        const auto a = phi_stat(shd, pd, fd);
        const auto b = phi_stat_secant(shd, pd, fd);
        const double scale = std::max({max_abs(a), max_abs(b), 1e-300});
        CHECK(max_abs(sub(a, b)) / scale < tolerances::stat_formula_relative);

        const auto J = shd.jacobian(pd);
        const auto Jfd = fd_jacobian(shd, pd);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) CHECK(std::abs(J(r, c) - Jfd(r, c)) < 1e-6);
    }
}

TEST_CASE("kinematic transport and pointwise duality") {
    const auto sh = shear_map();
    // dPhi at (1,0) is diag(1/4, 1/2); phi_kin is h^-2 (dPhi^-1)^* = diag(1, 1/2)
    CHECK(phi_kin(sh, {R(1), R(0)}, {R(0), R(1)}) == Vector<R>{R(0), R(1, 2)});
    CHECK(phi_kin(sh, {R(1), R(0)}, {R(1), R(0)}) == Vector<R>{R(1), R(0)});

    // identity (affine) map leaves velocities unchanged
    const auto id = ProjectiveMap<R>(Matrix<R>::identity(3));
    CHECK(phi_kin(id, {R(4), R(5)}, {R(2), R(-3)}) == Vector<R>{R(2), R(-3)});
    CHECK(phi_stat(id, {R(4), R(5)}, {R(2), R(-3)}) == Vector<R>{R(2), R(-3)});

    Rng rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        Vector<R> p = {R(rng.next_int(-4, 4)), R(rng.next_int(-4, 4))};
        if (sh.ell(p) == 0) continue;
        Vector<R> q = {R(rng.next_int(-5, 5)), R(rng.next_int(-5, 5))};
        Vector<R> f = {R(rng.next_int(-5, 5)), R(rng.next_int(-5, 5))};
        CHECK(dot(phi_kin(sh, p, q), phi_stat(sh, p, f)) == dot(q, f));
    }
}

TEST_CASE("motion transport preserves motions and triviality") {
    const auto sh = shear_map();
    const auto tri = triangle();
    const auto tri_img = apply_projective(sh, tri);
    const auto rep = analyze_kinematics(tri, kExact);
    REQUIRE(rep.dim_trivial == 3);
    for (const auto& t : rep.trivial_basis) {
        const auto moved = transport_motion(sh, tri, t);
        CHECK(is_infinitesimal_motion(tri_img, moved));
        // triviality: residual of projecting onto the image trivial space
        std::vector<Vector<double>> basis;
        for (const auto& tb : trivial_motions(to_floating(tri_img)))
            basis.push_back(flatten(tb));
        const auto flat = flatten(field_to_floating(moved));
        const auto proj = project_onto_span(basis, flat);
        CHECK(norm(sub(flat, proj)) / std::max(norm(flat), 1e-300) <
              tolerances::motion_residual);
    }

    const auto sq = unit_square();
    const auto sq_img = apply_projective(sh, sq);
    const auto sq_rep = analyze_kinematics(sq, kExact);
    for (const auto& q : sq_rep.motion_basis) {
        const auto moved = transport_motion(sh, sq, q);
        CHECK(is_infinitesimal_motion(sq_img, moved));
    }

    const VelocityField<R> zero(4, Vector<R>(2, R(0)));
    CHECK(flatten(transport_motion(sh, sq, zero)) == flatten(zero));
}

TEST_CASE("load transport preserves equilibrium and resolvability") {
    const auto sh = shear_map();
    const auto tri = triangle();
    const auto tri_img = apply_projective(sh, tri);
    const auto F = edge_load(tri, 0, 1);
    const auto moved = transport_load(sh, tri, F);
    CHECK(is_equilibrium_load(tri_img, moved));
    const auto res = resolve_load(tri_img, moved, kExact);
    CHECK(res.resolved);

    const Load<R> zero(3, Vector<R>(2, R(0)));
    CHECK(flatten(transport_load(sh, tri, zero)) == flatten(zero));
}

TEST_CASE("velocity lift and drop") {
    // zero velocity lifts to the zero class
    const auto z = velocity_lift<R>({R(1), R(2)}, {R(0), R(0)});
    CHECK(z.rep.is_zero_exact());
    CHECK(all_zero(velocity_drop<R>({R(1), R(2)}, z, Geometry::euclidean)));

    // frozen d = 1 case: p_hat = (1, 0), q = 3 gives the e0^e1 coefficient 3
    const auto one = velocity_lift<R>({R(0)}, {R(3)});
    CHECK(one.rep.at(0, 1) == 3);

    Rng rng(37);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t d = static_cast<std::size_t>(rng.next_int(1, 4));
        Vector<R> p(d), q(d);
        for (auto& x : p) x = R(rng.next_int(-5, 5));
        for (auto& x : q) x = R(rng.next_int(-5, 5));
        const auto tau = velocity_lift(p, q);
        CHECK(velocity_drop(p, tau, Geometry::euclidean) == q);
        // drop is insensitive to the class representative: add x-perp wedges
        auto tau2 = tau;
        Vector<R> mu(d + 1), nu(d + 1);
        // two covectors annihilating the base point
        mu[0] = -tau.base[1];
        mu[1] = tau.base[0];
        nu[0] = d >= 2 ? -tau.base[2] : R(0);
        if (d >= 2) nu[2] = tau.base[0];
        tau2.rep = tau.rep + wedge_dual(mu, nu);
        if (dot(mu, tau.base) == 0 && dot(nu, tau.base) == 0)
            CHECK(velocity_drop(p, tau2, Geometry::euclidean) == q);
    }

    // base point mismatch is rejected
    const auto tau = velocity_lift<R>({R(1), R(1)}, {R(1), R(0)});
    CHECK_THROWS_AS(velocity_drop<R>({R(2), R(1)}, tau, Geometry::euclidean),
                    BasePointMismatch);
}

TEST_CASE("surface lifts invert the drops and stay tangent") {
    // hyperbolic point (5/4, 3/4); tangent vectors satisfy <p, q>_{1,1} = 0
    const Vector<R> p = {R(5, 4), R(3, 4)};
    const Vector<R> q = {R(3, 5), R(1)};
    REQUIRE(ambient_inner(Geometry::hyperbolic, p, q) == 0);
    const auto tau = velocity_lift_surface(Geometry::hyperbolic, p, q);
    const auto back = velocity_drop(p, tau, Geometry::hyperbolic);
    CHECK(back == q);
    // the drop of any class is tangent, exactly
    CHECK(ambient_inner(Geometry::hyperbolic, p, back) == 0);
    CHECK_THROWS_AS(velocity_lift_surface(Geometry::hyperbolic, p, Vector<R>{R(1), R(0)}),
                    TangencyViolation);

    const Vector<R> ps = {R(3, 5), R(4, 5)};
    const Vector<R> qs = {R(-4), R(3)};
    REQUIRE(ambient_inner(Geometry::spherical, ps, qs) == 0);
    const auto taus = velocity_lift_surface(Geometry::spherical, ps, qs);
    CHECK(velocity_drop(ps, taus, Geometry::spherical) == qs);
}

TEST_CASE("class canonicalisation and equality") {
    Rng rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        Vector<R> p = {R(rng.next_int(-3, 3)), R(rng.next_int(-3, 3))};
        Vector<R> q = {R(rng.next_int(-3, 3)), R(rng.next_int(-3, 3))};
        const auto tau = velocity_lift(p, q);
        const auto can = tau.canonicalized();
        CHECK(classes_equal(tau, can));
        CHECK(velocity_drop(p, can, Geometry::euclidean) == q);
    }
}

TEST_CASE("projective motion check") {
    const auto sq = unit_square();
    const auto X = lift_to_projective(sq);
    const auto rep = analyze_kinematics(sq, kExact);

    // lifts of genuine motions pass; this matches kernel membership exactly
    for (const auto& qf : rep.motion_basis) {
        std::vector<DualBivectorClass<R>> taus;
        for (std::size_t i = 0; i < sq.vertex_count(); ++i)
            taus.push_back(velocity_lift(sq.vertices[i], qf[i]));
        CHECK(projective_motion_check(X, taus));
    }

    // a constant class is a trivial motion of the projective framework
    {
        DualBivector<R> t(3);
        t.at(0, 1) = 2;
        t.at(0, 2) = -1;
        t.at(1, 2) = 3;
        std::vector<DualBivectorClass<R>> taus;
        for (const auto& x : X.representatives) taus.push_back({x, t});
        CHECK(projective_motion_check(X, taus));
    }

    // random classes are rejected (probability-one event, 100 seeds)
    const auto tri = triangle();
    const auto Xt = lift_to_projective(tri);
    int rejected = 0;
    for (int seed = 0; seed < 100; ++seed) {
        Rng rng(500 + seed);
        std::vector<DualBivectorClass<R>> taus;
        VelocityField<R> qf;
        for (std::size_t i = 0; i < tri.vertex_count(); ++i) {
            Vector<R> q = {R(rng.next_int(-9, 9)), R(rng.next_int(-9, 9))};
            qf.push_back(q);
            taus.push_back(velocity_lift(tri.vertices[i], q));
        }
        const bool projective_says = projective_motion_check(Xt, taus);
        const bool euclidean_says = is_infinitesimal_motion(tri, qf);
        CHECK(projective_says == euclidean_says); // the two tests agree exactly
        if (!projective_says) ++rejected;
    }
    CHECK(rejected == 100);
}

TEST_CASE("force system reduction") {
    // equal and opposite forces at one point cancel
    ForceSystem<R> cancel = {{{R(1), R(2)}, {R(3), R(-1)}}, {{R(1), R(2)}, {R(-3), R(1)}}};
    CHECK(reduce_force_system(cancel, 2).kind == ForceKind::zero);

    // sliding along the line of action leaves the total unchanged
    ForceSystem<R> at_p = {{{R(1), R(1)}, {R(2), R(1)}}};
    ForceSystem<R> slid = {{{R(3), R(2)}, {R(2), R(1)}}}; // p + 1*(2,1)
    const auto r1 = reduce_force_system(at_p, 2);
    const auto r2 = reduce_force_system(slid, 2);
    CHECK(r1.total.c == r2.total.c);
    CHECK(r1.kind == ForceKind::single_force);
    CHECK(r1.point == r2.point);

    // a couple: zero net force, spatial moment wedge((0, p1 - p2), (0, f))
    ForceSystem<R> couple = {{{R(0), R(0)}, {R(0), R(1)}}, {{R(1), R(0)}, {R(0), R(-1)}}};
    const auto rc = reduce_force_system(couple, 2);
    CHECK(rc.kind == ForceKind::couple);
    const auto expect = wedge<R>({R(0), R(-1), R(0)}, {R(0), R(0), R(1)});
    CHECK(rc.total.at(1, 2) == expect.at(1, 2));

    // skew lines in d = 3: not equivalent to a single force
    ForceSystem<R> skew = {{{R(0), R(0), R(0)}, {R(1), R(0), R(0)}},
                           {{R(0), R(1), R(0)}, {R(0), R(0), R(1)}}};
    CHECK_THROWS_AS(reduce_force_system(skew, 3), NonDecomposable);
}
