#pragma once

#include "demforge/geometry.hpp"
#include "demforge/materials.hpp"
#include "demforge/vec3.hpp"

namespace demforge {

/// Spring and damping coefficients of one contact. eta_t equals eta_n.
struct ContactCoefficients {
    double k_t = 0.0;    // N/m
    double k_n = 0.0;    // N/m^(3/2)
    double eta_n = 0.0;  // N*s/m
    double eta_t = 0.0;  // N*s/m
};

/// Result of the force law applied to one contact.
struct ContactForce {
    Vec3 force;                        // N, acting on the owning particle
    Vec3 torque;                       // N*m, about the owning particle's center
    Vec3 new_tangential_displacement;  // m, after the cap back-solve when capped
    bool capped = false;               // sliding-friction cap applied
    double normal_magnitude = 0.0;     // |F_n|
    double tangential_magnitude = 0.0; // |F_t| after any cap; feeds the friction audit
};

/// Damping parameter as a function of the pair restitution coefficient.
/// alpha(1) = 0 (perfectly elastic contact has no damping). This is the
/// linear-dashpot-derived form; it is the single place the mapping lives.
double restitution_alpha(double restitution);

/// Contact spring/damping coefficients.
///
/// k_t = 8 * sqrt(r_eff * delta_n) / ((2 - s1)/G1 + (2 - s2)/G2)
/// k_n = (4/3) * sqrt(r_eff)       / ((2 - s1^2)/E1 + (2 - s2^2)/E2)
/// eta_n = eta_t = alpha(eps) * sqrt(m_eff * k_n * sqrt(delta_n))
///
/// For wall partners the r2 -> inf, m2 -> inf limits are taken analytically:
/// r_eff = r1 and m_eff = m1, while the wall material stays in the bracket
/// sums. r2/m2 are ignored in that case.
ContactCoefficients contact_coefficients(double delta_n, const MaterialParams& mat1,
                                         const MaterialParams& mat2, double r1, double r2,
                                         double m1, double m2, double pair_restitution,
                                         bool partner_is_wall);

/// Same computation with alpha(pair_restitution) already evaluated; the
/// step loop precomputes alpha per material pair.
ContactCoefficients contact_coefficients_with_alpha(double delta_n, const MaterialParams& mat1,
                                                    const MaterialParams& mat2, double r1,
                                                    double r2, double m1, double m2, double alpha,
                                                    bool partner_is_wall);

/// Tangential displacement update: project the old value off the current
/// normal, then integrate the tangential velocity over the step.
Vec3 update_tangential_displacement(const Vec3& delta_t_old, const Vec3& normal,
                                    const Vec3& tangential_velocity, double dt);

/// Full force law with the sliding-friction cap.
///
/// F = -k_t*delta_t - eta_t*v_t - k_n*delta_n^(3/2)*n - eta_n*v_n
/// If |F_t| > mu_d*|F_n| the tangential part is replaced by the sliding
/// friction mu_d*|F_n|*F_t/|F_t| and delta_t is recomputed from
/// F_t = -k_t*delta_t. A capped tangential force below 1e-15 N has no
/// usable direction; it is zeroed together with delta_t.
/// The torque is r1 * (n x F) with the final force.
ContactForce contact_force(const ContactGeometry& geom, const ContactCoefficients& coeffs,
                           const Vec3& delta_t, double mu_d, double r1);

}  // namespace demforge
