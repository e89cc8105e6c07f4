#pragma once

#include <cstdint>
#include <optional>

#include "demforge/vec3.hpp"

namespace demforge {

enum class PartnerKind { particle, rectangle_wall, line_wall };

/// The other body of a contact. Walls carry infinite radius/mass sentinels
/// and zero velocities; the coefficient formulas use the analytic wall
/// limits instead of the sentinels.
struct ContactPartner {
    PartnerKind kind = PartnerKind::particle;
    double radius = 0.0;            // m; +inf for walls
    double mass = 0.0;              // kg; +inf for walls
    Vec3 velocity{};                // m/s; zero for static walls
    Vec3 angular_velocity{};        // rad/s; zero for walls
    std::uint32_t material_id = 0;

    bool is_wall() const { return kind != PartnerKind::particle; }

    static ContactPartner make_particle(double r, double m, const Vec3& v, const Vec3& w,
                                        std::uint32_t material);
    static ContactPartner make_wall(PartnerKind kind, std::uint32_t material);
};

/// Geometry of one contact, seen from the owning particle:
/// the normal points from its center toward the partner, and the relative
/// velocity is the particle's velocity relative to the partner, so that the
/// damping terms of the force law oppose approach.
struct ContactGeometry {
    Vec3 normal;               // unit vector, particle -> partner
    double overlap = 0.0;      // delta_n, m, > 0 while in contact
    Vec3 contact_point;        // m
    Vec3 relative_velocity;    // v, m/s (particle relative to partner)
    Vec3 tangential_velocity;  // v_t, m/s; orthogonal to normal up to rounding
};

/// Sphere-sphere contact check. Returns nullopt when the centers are at
/// least r1 + r2 apart. Throws DegenerateContactError on coincident centers.
std::optional<ContactGeometry> contact_geometry(const Vec3& pos1, double r1, const Vec3& pos2,
                                                double r2, const Vec3& v1, const Vec3& v2,
                                                const Vec3& w1, const Vec3& w2);

/// Sphere against an arbitrary partner. For wall partners `partner_point`
/// is the closest point on the wall; for particles it is the center.
std::optional<ContactGeometry> contact_geometry(const Vec3& pos1, double r1, const Vec3& v1,
                                                const Vec3& w1, const Vec3& partner_point,
                                                const ContactPartner& partner);

/// Finite rectangle: corner plus two orthogonal edge vectors.
struct RectWall {
    Vec3 corner;
    Vec3 edge_u;
    Vec3 edge_v;
    std::uint32_t material_id = 0;
};

/// Finite line segment from a to b.
struct LineWall {
    Vec3 a;
    Vec3 b;
    std::uint32_t material_id = 0;
};

struct ClosestPoint {
    Vec3 point;
    double distance;
};

ClosestPoint closest_point_rectangle(const Vec3& pos, const RectWall& rect);
ClosestPoint closest_point_line(const Vec3& pos, const LineWall& seg);

}  // namespace demforge
