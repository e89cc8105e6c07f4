#include "demforge/contact_mechanics.hpp"

#include <cmath>

namespace demforge {

double restitution_alpha(double restitution) {
    if (restitution >= 1.0) return 0.0;
    const double ln_eps = std::log(restitution);
    constexpr double pi = 3.14159265358979323846;
    return -2.0 * ln_eps / std::sqrt(pi * pi + ln_eps * ln_eps);
}

ContactCoefficients contact_coefficients_with_alpha(double delta_n, const MaterialParams& mat1,
                                                    const MaterialParams& mat2, double r1,
                                                    double r2, double m1, double m2, double alpha,
                                                    bool partner_is_wall) {
    const double r_eff = partner_is_wall ? r1 : r1 * r2 / (r1 + r2);
    const double m_eff = partner_is_wall ? m1 : m1 * m2 / (m1 + m2);

    const double shear_sum = (2.0 - mat1.poisson_ratio) / mat1.shear_modulus +
                             (2.0 - mat2.poisson_ratio) / mat2.shear_modulus;
    const double young_sum =
        (2.0 - mat1.poisson_ratio * mat1.poisson_ratio) / mat1.youngs_modulus +
        (2.0 - mat2.poisson_ratio * mat2.poisson_ratio) / mat2.youngs_modulus;

    ContactCoefficients c;
    c.k_t = 8.0 * std::sqrt(r_eff * delta_n) / shear_sum;
    c.k_n = (4.0 / 3.0) * std::sqrt(r_eff) / young_sum;
    c.eta_n = alpha * std::sqrt(m_eff * c.k_n * std::sqrt(delta_n));
    c.eta_t = c.eta_n;
    return c;
}

ContactCoefficients contact_coefficients(double delta_n, const MaterialParams& mat1,
                                         const MaterialParams& mat2, double r1, double r2,
                                         double m1, double m2, double pair_restitution,
                                         bool partner_is_wall) {
    return contact_coefficients_with_alpha(delta_n, mat1, mat2, r1, r2, m1, m2,
                                           restitution_alpha(pair_restitution), partner_is_wall);
}

Vec3 update_tangential_displacement(const Vec3& delta_t_old, const Vec3& normal,
                                    const Vec3& tangential_velocity, double dt) {
    return delta_t_old - normal * dot(delta_t_old, normal) + tangential_velocity * dt;
}

ContactForce contact_force(const ContactGeometry& geom, const ContactCoefficients& coeffs,
                           const Vec3& delta_t, double mu_d, double r1) {
    const Vec3& n = geom.normal;
    const Vec3 v_n = n * dot(geom.relative_velocity, n);

    const Vec3 force = delta_t * -coeffs.k_t - geom.tangential_velocity * coeffs.eta_t -
                       n * (coeffs.k_n * geom.overlap * std::sqrt(geom.overlap)) -
                       v_n * coeffs.eta_n;

    const Vec3 f_normal = n * dot(force, n);
    Vec3 f_tangent = force - f_normal;

    ContactForce out;
    out.new_tangential_displacement = delta_t;
    out.normal_magnitude = norm(f_normal);

    const double ft_mag = norm(f_tangent);
    const double limit = mu_d * out.normal_magnitude;
    if (ft_mag > limit) {
        out.capped = true;
        if (ft_mag < 1e-15) {
            // Direction undefined; drop the tangential component entirely.
            f_tangent = Vec3{};
            out.new_tangential_displacement = Vec3{};
            out.tangential_magnitude = 0.0;
        } else {
            f_tangent = f_tangent * (limit / ft_mag);
            out.new_tangential_displacement = f_tangent * (-1.0 / coeffs.k_t);
            out.tangential_magnitude = norm(f_tangent);
        }
    } else {
        out.tangential_magnitude = ft_mag;
    }

    out.force = f_normal + f_tangent;
    out.torque = cross(n, out.force) * r1;
    return out;
}

}  // namespace demforge
