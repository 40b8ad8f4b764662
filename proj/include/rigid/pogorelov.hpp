#pragma once

#include <cmath>
#include <string>

#include "rigid/framework.hpp"
#include "rigid/projective.hpp"

namespace rigid {

/// Central projections and infinitesimal motion transports between a
/// Euclidean framework and its hyperbolic/spherical images. The tangent
/// point of the three models is c = (1, 0, ..., 0); the hyperbolic image
/// exists only for frameworks inside the open unit disk around c.
///
/// Everything here is floating point: the projected coordinates carry
/// square-root normalisations that leave the rationals.

enum class PogorelovDirection { to_hyperbolic, from_hyperbolic, to_spherical, from_spherical };

inline Geometry projection_target(PogorelovDirection dir) {
    return (dir == PogorelovDirection::to_hyperbolic || dir == PogorelovDirection::from_hyperbolic)
               ? Geometry::hyperbolic
               : Geometry::spherical;
}

/// Radial projection of p_hat = (1, p) onto the model surface.
inline Framework<double> central_project(const Framework<double>& fw, Geometry target) {
    if (fw.geometry != Geometry::euclidean)
        throw GeometryMismatch("central projection starts from a Euclidean framework");
    if (target == Geometry::euclidean)
        throw InvalidParameters("projection target must be hyperbolic or spherical");
    Framework<double> out;
    out.dim = fw.dim;
    out.geometry = target;
    out.edges = fw.edges;
    out.labels = fw.labels;
    for (std::size_t i = 0; i < fw.vertex_count(); ++i) {
        const Vector<double> ph = homogeneous_lift(fw, i);
        const double nsq = to_double(ambient_inner(target, ph, ph));
        if (target == Geometry::hyperbolic && !(nsq > 0.0))
            throw OutsideDisk("vertex " + std::to_string(i) + " is outside the unit disk");
        const double s = std::sqrt(nsq);
        out.vertices.push_back(scaled(ph, 1.0 / s));
    }
    out.validate();
    return out;
}

/// Uniform scaling about c that brings every vertex within the given radius.
/// Scaling is affine, so degrees of freedom are unchanged.
inline Framework<double> fit_disk(const Framework<double>& fw, double radius) {
    if (fw.geometry != Geometry::euclidean)
        throw GeometryMismatch("fit_disk expects a Euclidean framework");
    if (!(radius > 0.0)) throw InvalidParameters("fit radius must be positive");
    double worst = 0.0;
    for (const auto& p : fw.vertices) worst = std::max(worst, norm(p));
    if (worst <= radius) return fw;
    Framework<double> out = fw;
    const double s = radius / worst;
    for (auto& p : out.vertices) p = scaled(p, s);
    out.validate();
    return out;
}

namespace detail {

inline void check_tangent(Geometry g, const Vector<double>& x, const Vector<double>& q) {
    const double xq = ambient_inner(g, x, q);
    const double scale = std::max(1e-300, max_abs(x) * max_abs(q));
    if (std::abs(xq) > tolerances::motion_residual * scale)
        throw TangencyViolation("input field is not tangent to the model surface");
}

} // namespace detail

/// Velocity transport along the central projection, implemented through the
/// shared projective velocity classes: lift at the source geometry, drop at
/// the target. fw is always the Euclidean framework; for the from_*
/// directions the input field lives on central_project(fw, target).
inline VelocityField<double> pogorelov_transport(const Framework<double>& fw,
                                                 const VelocityField<double>& field,
                                                 PogorelovDirection dir) {
    if (field.size() != fw.vertex_count())
        throw DimensionMismatch("field size != vertex count");
    const Geometry target = projection_target(dir);
    const Framework<double> proj = central_project(fw, target);
    const bool forward =
        dir == PogorelovDirection::to_hyperbolic || dir == PogorelovDirection::to_spherical;

    VelocityField<double> out;
    out.reserve(fw.vertex_count());
    for (std::size_t i = 0; i < fw.vertex_count(); ++i) {
        if (forward) {
            if (field[i].size() != static_cast<std::size_t>(fw.dim))
                throw DimensionMismatch("euclidean velocities have d components");
            const auto tau = velocity_lift(fw.vertices[i], field[i]);
            out.push_back(velocity_drop(proj.vertices[i], tau, target));
        } else {
            if (field[i].size() != static_cast<std::size_t>(fw.dim) + 1)
                throw DimensionMismatch("surface velocities have d+1 components");
            detail::check_tangent(target, proj.vertices[i], field[i]);
            const auto tau = velocity_lift_surface(target, proj.vertices[i], field[i]);
            out.push_back(velocity_drop(homogeneous_lift(fw, i), tau, Geometry::euclidean));
        }
    }
    return out;
}

/// Closed-form version of the same transport, kept as an independent code
/// path for cross-validation: q = pr(sqrt(1 -+ |p - c|^2) q^target), with
/// the 0-th target component recovered from tangency.
inline VelocityField<double> pogorelov_transport_closed_form(const Framework<double>& fw,
                                                             const VelocityField<double>& field,
                                                             PogorelovDirection dir) {
    if (field.size() != fw.vertex_count())
        throw DimensionMismatch("field size != vertex count");
    const Geometry target = projection_target(dir);
    const Framework<double> proj = central_project(fw, target);
    const bool forward =
        dir == PogorelovDirection::to_hyperbolic || dir == PogorelovDirection::to_spherical;

    VelocityField<double> out;
    out.reserve(fw.vertex_count());
    for (std::size_t i = 0; i < fw.vertex_count(); ++i) {
        const Vector<double>& p = fw.vertices[i];
        const double psq = to_double(norm_sq(p));
        const double factor =
            target == Geometry::hyperbolic ? std::sqrt(1.0 - psq) : std::sqrt(1.0 + psq);
        const Vector<double>& sp = proj.vertices[i];
        if (forward) {
            Vector<double> qt(fw.dim + 1, 0.0);
            for (int a = 0; a < fw.dim; ++a) qt[a + 1] = field[i][a] / factor;
            // 0-th component from tangency with the surface point
            double spatial = 0.0;
            for (int a = 1; a <= fw.dim; ++a) spatial += sp[a] * qt[a];
            qt[0] = target == Geometry::hyperbolic ? spatial / sp[0] : -spatial / sp[0];
            out.push_back(std::move(qt));
        } else {
            detail::check_tangent(target, sp, field[i]);
            Vector<double> q(fw.dim, 0.0);
            for (int a = 0; a < fw.dim; ++a) q[a] = factor * field[i][a + 1];
            out.push_back(std::move(q));
        }
    }
    return out;
}

} // namespace rigid
