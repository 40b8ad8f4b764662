#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "rigid/catalog.hpp"
#include "rigid/json_io.hpp"
#include "rigid/pogorelov.hpp"
#include "rigid/projective.hpp"
#include "rigid/randgen.hpp"
#include "rigid/rigidity.hpp"

namespace rigid {

/// A seeded batch check of one of the toolkit's structural properties.
/// Identical (plan, inputs) pairs produce identical reports.
struct VerifyPlan {
    std::string property; // darboux-sauer | pogorelov | static-kinematic-duality |
                          // virtual-work | affine-invariance | blaschke
    int trials = 100;
    std::uint64_t seed = 0;
    int dimension = 0; // 0 = alternate between 2 and 3; otherwise fixed
    double rel_epsilon = 1e-10;
};

struct TrialFailure {
    int index = 0;
    std::string reason;
    json instance; // framework (and map) for reproduction / minimisation
};

struct VerifyReport {
    std::string property;
    int trials = 0;
    std::uint64_t seed = 0;
    int passes = 0;
    std::vector<TrialFailure> failures;

    bool ok() const { return failures.empty(); }

    json to_json() const {
        json doc;
        doc["property"] = property;
        doc["trials"] = trials;
        doc["seed"] = seed;
        doc["passes"] = passes;
        doc["ok"] = ok();
        json fails = json::array();
        for (const auto& f : failures) {
            json e;
            e["trial"] = f.index;
            e["reason"] = f.reason;
            e["instance"] = f.instance;
            fails.push_back(std::move(e));
        }
        doc["failures"] = std::move(fails);
        return doc;
    }
};

/// Matrix<Rational> -> Matrix<double> (for the floating re-checks).
inline Matrix<double> convert_matrix(const Matrix<Rational>& m) {
    Matrix<double> out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = to_double(m(i, j));
    return out;
}

namespace verify_detail {

inline int trial_dim(const VerifyPlan& plan, int index) {
    if (plan.dimension == 2 || plan.dimension == 3) return plan.dimension;
    return index % 2 == 0 ? 2 : 3;
}

/// Largest relative deviation between two fields.
inline double field_gap(const VectorField<double>& a, const VectorField<double>& b) {
    double worst = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t c = 0; c < a[i].size(); ++c) {
            worst = std::max(worst, std::abs(a[i][c] - b[i][c]));
            scale = std::max({scale, std::abs(a[i][c]), std::abs(b[i][c])});
        }
    }
    return worst / std::max(scale, 1e-300);
}

/// Residual of v against span(basis), relative to |v|.
inline double projection_residual(const std::vector<VectorField<double>>& basis,
                                  const VectorField<double>& v) {
    std::vector<Vector<double>> rows;
    for (const auto& b : basis) rows.push_back(flatten(b));
    const Vector<double> flat = flatten(v);
    const Vector<double> proj = project_onto_span(rows, flat);
    return norm(sub(flat, proj)) / std::max(norm(flat), 1e-300);
}

struct Check {
    std::ostringstream reasons;
    bool ok = true;
    void require(bool cond, const std::string& what) {
        if (!cond) {
            if (!ok) reasons << "; ";
            reasons << what;
            ok = false;
        }
    }
};

// --- darboux-sauer -------------------------------------------------------

inline void darboux_trial(const VerifyPlan& plan, int index, Check& chk, json& instance) {
    Rng rng(trial_seed(plan.seed, static_cast<std::uint64_t>(index)));
    const int d = trial_dim(plan, index);
    const auto fw = random_framework(rng, d);
    const auto mtx = random_projective_matrix(rng, fw);
    instance = framework_to_json(fw);
    instance["map"] = matrix_to_json(mtx)["matrix"];

    const TolerancePolicy exact = TolerancePolicy::exact();
    const ProjectiveMap<Rational> phi(mtx);
    const auto image = apply_projective(phi, fw);
    const auto rep_src = analyze_kinematics(fw, exact);
    const auto rep_img = analyze_kinematics(image, exact);
    chk.require(rep_src.dof == rep_img.dof, "dof changed under projective map");
    chk.require(rep_src.rigid == rep_img.rigid, "rigidity verdict changed");

    // transported exact motion basis: each image field is a motion, and the
    // transported set stays linearly independent of full count
    if (!rep_src.motion_basis.empty()) {
        Matrix<Rational> stacked(rep_src.motion_basis.size(),
                                 flatten(rep_src.motion_basis[0]).size());
        for (std::size_t k = 0; k < rep_src.motion_basis.size(); ++k) {
            const auto moved = transport_motion(phi, fw, rep_src.motion_basis[k]);
            chk.require(is_infinitesimal_motion(image, moved),
                        "transported motion violates an image constraint");
            stacked.set_row(k, flatten(moved));
        }
        chk.require(rank_of(stacked, exact) == rep_src.motion_basis.size(),
                    "transported basis lost rank");
    }

    // floating pipeline residuals for the same data
    const auto fwd = to_floating(fw);
    const ProjectiveMap<double> phid(convert_matrix(mtx));
    const auto imaged = apply_projective(phid, fwd);
    const auto repd = analyze_kinematics(fwd, TolerancePolicy::floating(plan.rel_epsilon));
    for (const auto& q : repd.motion_basis) {
        const auto moved = transport_motion(phid, fwd, q);
        chk.require(motion_residual(imaged, moved) < tolerances::motion_residual,
                    "floating transported motion residual above 1e-9");
    }

    // Eq. (16) vs Eq. (17): secant form against the differential form at
    // random probe points off L (and with the probe tip off L as well)
    int probes = 0;
    while (probes < 5) {
        Vector<Rational> p(d), f(d);
        for (int a = 0; a < d; ++a) p[a] = Rational(rng.next_int(-5, 5));
        for (int a = 0; a < d; ++a) f[a] = Rational(rng.next_int(-2, 2));
        const Vector<Rational> pf = add(p, f);
        const double gn = phi.gradient_norm();
        if (std::abs(to_double(phi.ell(p))) / gn <= 0.1) continue;
        if (std::abs(to_double(phi.ell(pf))) / gn <= 0.01) continue;
        ++probes;
        const auto lhs = phi_stat(phi, p, f);
        const auto rhs = phi_stat_secant(phi, p, f);
        chk.require(lhs == rhs, "Eq16/Eq17 disagree exactly");
        // and in floating arithmetic, to the stated relative tolerance
        Vector<double> pd(d), fd(d);
        for (int a = 0; a < d; ++a) pd[a] = to_double(p[a]);
        for (int a = 0; a < d; ++a) fd[a] = to_double(f[a]);
        const auto lhsd = phi_stat(phid, pd, fd);
        const auto rhsd = phi_stat_secant(phid, pd, fd);
        const double scale = std::max({max_abs(lhsd), max_abs(rhsd), 1e-300});
        chk.require(max_abs(sub(lhsd, rhsd)) / scale < tolerances::stat_formula_relative,
                    "Eq16/Eq17 floating agreement above 1e-9");
    }

    // pointwise duality of the two transports at a random probe
    {
        Vector<Rational> p(d), q(d), f(d);
        for (int a = 0; a < d; ++a) {
            p[a] = Rational(rng.next_int(-5, 5));
            q[a] = Rational(rng.next_int(-3, 3));
            f[a] = Rational(rng.next_int(-3, 3));
        }
        if (std::abs(to_double(phi.ell(p))) / phi.gradient_norm() > 0.1) {
            const Rational lhs = dot(phi_kin(phi, p, q), phi_stat(phi, p, f));
            chk.require(lhs == dot(q, f), "transport duality broken");
        }
    }
}

// --- pogorelov -----------------------------------------------------------

inline void pogorelov_trial(const VerifyPlan& plan, int index, Check& chk, json& instance) {
    Rng rng(trial_seed(plan.seed, static_cast<std::uint64_t>(index)));
    const int d = trial_dim(plan, index);
    const auto fwq = random_framework(rng, d);
    instance = framework_to_json(fwq);
    const auto fw = to_floating(fwq);
    const TolerancePolicy tol = TolerancePolicy::floating(plan.rel_epsilon);

    const auto rep = analyze_kinematics(fw, tol);
    const auto sph = central_project(fw, Geometry::spherical);
    const auto rep_s = analyze_kinematics(sph, tol);
    chk.require(rep.dof == rep_s.dof, "spherical projection changed dof");

    const auto fwh = fit_disk(fw, 0.9);
    const auto rep_h_src = analyze_kinematics(fwh, tol);
    const auto hyp = central_project(fwh, Geometry::hyperbolic);
    const auto rep_h = analyze_kinematics(hyp, tol);
    chk.require(rep_h_src.dof == rep.dof, "disk rescale changed dof");
    chk.require(rep_h_src.dof == rep_h.dof, "hyperbolic projection changed dof");

    // closed form vs lift/drop pipeline, and round trips, on the motion
    // basis plus one random field
    std::vector<VectorField<double>> probes = rep_h_src.motion_basis;
    probes.push_back(field_to_floating(random_field(rng, fw.vertex_count(), d)));
    for (const auto& q : probes) {
        for (PogorelovDirection dir :
             {PogorelovDirection::to_hyperbolic, PogorelovDirection::to_spherical}) {
            const auto a = pogorelov_transport(fwh, q, dir);
            const auto b = pogorelov_transport_closed_form(fwh, q, dir);
            chk.require(field_gap(a, b) < tolerances::transport_agreement,
                        "closed form and pipeline disagree");
            const auto back = pogorelov_transport(
                fwh, a,
                dir == PogorelovDirection::to_hyperbolic ? PogorelovDirection::from_hyperbolic
                                                         : PogorelovDirection::from_spherical);
            chk.require(field_gap(back, q) < tolerances::transport_agreement,
                        "round trip is not the identity");
        }
    }

    // motions map to motions; trivial motions land in the target's trivial space
    for (const auto& q : rep_h_src.motion_basis) {
        const auto qh = pogorelov_transport(fwh, q, PogorelovDirection::to_hyperbolic);
        chk.require(motion_residual(hyp, qh) < tolerances::motion_residual,
                    "transported motion fails hyperbolic constraints");
    }
    const auto triv_h = trivial_motions(hyp, tol);
    for (const auto& q : rep_h_src.trivial_basis) {
        const auto qh = pogorelov_transport(fwh, q, PogorelovDirection::to_hyperbolic);
        chk.require(projection_residual(triv_h, qh) < tolerances::motion_residual,
                    "transported trivial motion is not trivial");
    }
    const auto triv_s = trivial_motions(sph, tol);
    for (const auto& q : rep.trivial_basis) {
        const auto qs = pogorelov_transport(fw, q, PogorelovDirection::to_spherical);
        chk.require(projection_residual(triv_s, qs) < tolerances::motion_residual,
                    "transported trivial motion is not trivial (spherical)");
    }
}

// --- static-kinematic duality --------------------------------------------

inline void duality_trial(const VerifyPlan& plan, int index, Check& chk, json& instance) {
    Rng rng(trial_seed(plan.seed, static_cast<std::uint64_t>(index)));
    const int d = trial_dim(plan, index);
    const auto fw = random_framework(rng, d);
    instance = framework_to_json(fw);
    const TolerancePolicy exact = TolerancePolicy::exact();
    const auto kin = analyze_kinematics(fw, exact);
    const auto sta = analyze_statics(fw, exact);
    chk.require(kin.dof == sta.static_dof, "kinematic and static dof differ");
    const std::size_t expected_eq =
        static_cast<std::size_t>(d) * fw.vertex_count() - pair_count(d + 1);
    chk.require(sta.dim_equilibrium == expected_eq, "dim F_eq formula violated on full span");
}

// --- virtual work ---------------------------------------------------------

inline void virtual_work_trial(const VerifyPlan& plan, int index, Check& chk, json& instance) {
    Rng rng(trial_seed(plan.seed, static_cast<std::uint64_t>(index)));
    const int d = trial_dim(plan, index);
    const auto fw = random_framework(rng, d);
    instance = framework_to_json(fw);
    const TolerancePolicy exact = TolerancePolicy::exact();

    const auto kin = analyze_kinematics(fw, exact);
    // resolvable loads are spanned by the edge loads F^{ij}
    std::vector<Load<Rational>> res_span;
    for (const auto& [i, j] : fw.edges) res_span.push_back(edge_load(fw, i, j));
    // equilibrium loads: kernel of the total-bivector map
    const auto eqn = rank_nullspace(equilibrium_matrix(fw), exact);
    std::vector<Load<Rational>> eq_basis;
    for (const auto& v : eqn.kernel) eq_basis.push_back(unflatten(v, fw.vertex_count()));
    const auto triv_gens = trivial_motion_generators(fw);

    // first principle: motions annihilate resolvable loads
    for (const auto& q : kin.motion_basis)
        for (const auto& F : res_span)
            chk.require(is_zero(pairing(q, F)), "motion does not annihilate a resolvable load");
    // second principle: trivial motions annihilate equilibrium loads
    for (const auto& q : triv_gens)
        for (const auto& F : eq_basis)
            chk.require(is_zero(pairing(q, F)),
                        "trivial motion does not annihilate an equilibrium load");
    // and the dimensions pair up under the duality
    const std::size_t total = static_cast<std::size_t>(d) * fw.vertex_count();
    const auto sta = analyze_statics(fw, exact);
    chk.require(kin.dim_trivial + sta.dim_equilibrium == total,
                "dim Q_triv + dim F_eq != d |V|");
    chk.require(kin.dim_motions + sta.dim_resolvable == total,
                "dim Q_mot + dim F_res != d |V|");
    // every edge load is an equilibrium load, including non-edges
    const int i = static_cast<int>(rng.next_int(0, static_cast<long>(fw.vertex_count()) - 1));
    int j = static_cast<int>(rng.next_int(0, static_cast<long>(fw.vertex_count()) - 1));
    if (i == j) j = (j + 1) % static_cast<int>(fw.vertex_count());
    if (fw.vertices[i] != fw.vertices[j])
        chk.require(is_equilibrium_load(fw, edge_load(fw, i, j)),
                    "pair load F^{ij} is not an equilibrium load");
}

// --- affine invariance ----------------------------------------------------

inline void affine_trial(const VerifyPlan& plan, int index, Check& chk, json& instance) {
    Rng rng(trial_seed(plan.seed, static_cast<std::uint64_t>(index)));
    const int d = trial_dim(plan, index);
    const auto fw = random_framework(rng, d);
    auto [a, b] = random_affine_map(rng, d);
    instance = framework_to_json(fw);
    instance["affine"] = matrix_to_json(a)["matrix"];

    const TolerancePolicy exact = TolerancePolicy::exact();
    const auto image = apply_affine(a, b, fw);
    const auto rep_src = analyze_kinematics(fw, exact);
    const auto rep_img = analyze_kinematics(image, exact);
    chk.require(rep_src.dof == rep_img.dof, "dof changed under affine map");
    chk.require(rep_src.rigid == rep_img.rigid, "rigidity verdict changed under affine map");

    const Matrix<Rational> at = a.transposed();
    for (const auto& q : rep_src.motion_basis) {
        VelocityField<Rational> moved;
        for (const auto& qi : q) moved.push_back(solve_square(at, qi));
        chk.require(is_infinitesimal_motion(image, moved),
                    "(A^*)^{-1}-transported motion fails image constraints");
    }
}

// --- blaschke sweep --------------------------------------------------------

inline void blaschke_trial(const VerifyPlan& plan, int index, Check& chk, json& instance) {
    const double radius = 1.0 + 0.125 * (index % 4);
    const double height = 0.75 + 0.25 * (index % 3);
    instance = {{"radius", radius}, {"height", height}};
    const TolerancePolicy tol = TolerancePolicy::floating(plan.rel_epsilon);
    for (double twist : {50.0, 60.0, 70.0, 80.0, 90.0, 100.0}) {
        const auto ex = make_twisted_octahedron(radius, height, twist);
        const auto rep = analyze_kinematics(ex.fw, tol);
        const bool concurrent = blaschke_check(ex.fw, ex.black_faces, tol);
        chk.require(concurrent == (rep.dof >= 1),
                    "four-plane concurrency disagrees with flexibility at twist " +
                        std::to_string(twist));
    }
    if (index == 0) {
        const auto lieb = make_liebmann_octahedron();
        chk.require(blaschke_check(*lieb.fw_exact, lieb.black_faces, TolerancePolicy::exact()),
                    "liebmann octahedron fails the four-plane test");
        chk.require(analyze_kinematics(*lieb.fw_exact, TolerancePolicy::exact()).dof == 1,
                    "liebmann octahedron is not a one-dof flexer");
    }
}

} // namespace verify_detail

inline VerifyReport run_verify(const VerifyPlan& plan) {
    if (plan.trials < 1) throw InvalidParameters("trials must be >= 1");
    VerifyReport rep;
    rep.property = plan.property;
    rep.trials = plan.trials;
    rep.seed = plan.seed;
    for (int i = 0; i < plan.trials; ++i) {
        verify_detail::Check chk;
        json instance;
        try {
            if (plan.property == "darboux-sauer")
                verify_detail::darboux_trial(plan, i, chk, instance);
            else if (plan.property == "pogorelov")
                verify_detail::pogorelov_trial(plan, i, chk, instance);
            else if (plan.property == "static-kinematic-duality")
                verify_detail::duality_trial(plan, i, chk, instance);
            else if (plan.property == "virtual-work")
                verify_detail::virtual_work_trial(plan, i, chk, instance);
            else if (plan.property == "affine-invariance")
                verify_detail::affine_trial(plan, i, chk, instance);
            else if (plan.property == "blaschke")
                verify_detail::blaschke_trial(plan, i, chk, instance);
            else
                throw InvalidParameters("unknown property '" + plan.property + "'");
        } catch (const InvalidParameters&) {
            throw;
        } catch (const Error& e) {
            chk.require(false, std::string("unexpected error: ") + e.what());
        }
        if (chk.ok) {
            ++rep.passes;
        } else {
            rep.failures.push_back({i, chk.reasons.str(), instance});
        }
    }
    return rep;
}

} // namespace rigid
