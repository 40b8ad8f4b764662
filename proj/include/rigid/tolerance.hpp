#pragma once

namespace rigid {

enum class ToleranceMode { floating, exact_rational };

/// Numeric policy shared by rank, nullspace and verdict computations.
///
/// In floating mode a singular value sigma counts as zero when
///   sigma <= sigma_max * max(rows, cols) * rel_epsilon.
/// Exact mode removes the threshold entirely (pivots are compared with 0).
struct TolerancePolicy {
    ToleranceMode mode = ToleranceMode::floating;
    double rel_epsilon = 1e-10;

    static TolerancePolicy floating(double eps = 1e-10) {
        return TolerancePolicy{ToleranceMode::floating, eps};
    }
    static TolerancePolicy exact() {
        return TolerancePolicy{ToleranceMode::exact_rational, 0.0};
    }
    bool is_exact() const { return mode == ToleranceMode::exact_rational; }
};

/// Fixed thresholds used by verdicts and test gates. These are part of the
/// behavioural contract, not tuning knobs.
namespace tolerances {
inline constexpr double surface_residual = 1e-9;   // |norm^2 - 1| band for H^d / S^d vertices
inline constexpr double resolve_relative = 1e-8;   // least-squares residual vs |F| for resolvability
inline constexpr double motion_residual = 1e-9;    // edge/tangency residual for transported motions
inline constexpr double transport_agreement = 1e-12; // closed form vs lift/drop, round trips
inline constexpr double duality_probe = 1e-10;     // <phi_kin q, phi_stat f> = <q, f>
inline constexpr double bilinearity_probe = 1e-12; // wedge/pairing linearity probes
inline constexpr double equilibrium_relative = 1e-9; // total-bivector verdicts
inline constexpr double stat_formula_relative = 1e-9; // Eq16 vs Eq17 agreement
} // namespace tolerances

} // namespace rigid
