#include "demforge/geometry.hpp"

#include <algorithm>
#include <limits>

#include "demforge/error.hpp"

namespace demforge {

namespace {
constexpr double kDegenerateDistance = 1e-12;
}

ContactPartner ContactPartner::make_particle(double r, double m, const Vec3& v, const Vec3& w,
                                             std::uint32_t material) {
    return ContactPartner{PartnerKind::particle, r, m, v, w, material};
}

ContactPartner ContactPartner::make_wall(PartnerKind kind, std::uint32_t material) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    return ContactPartner{kind, inf, inf, Vec3{}, Vec3{}, material};
}

std::optional<ContactGeometry> contact_geometry(const Vec3& pos1, double r1, const Vec3& v1,
                                                const Vec3& w1, const Vec3& partner_point,
                                                const ContactPartner& partner) {
    const Vec3 diff = partner_point - pos1;
    const double dist = norm(diff);
    const double reach = partner.is_wall() ? r1 : r1 + partner.radius;
    if (dist >= reach) return std::nullopt;
    if (dist < kDegenerateDistance) {
        throw DegenerateContactError("Collide", "coincident centers: contact normal undefined");
    }

    ContactGeometry g;
    g.normal = diff / dist;
    g.overlap = reach - dist;
    g.contact_point = partner.is_wall() ? partner_point
                                        : pos1 + g.normal * (r1 - 0.5 * g.overlap);

    // Relative velocity of this particle with respect to the partner; the
    // spin term adds the surface speeds at the contact point. A wall has no
    // spin contribution (its radius is infinite and its spin is zero).
    g.relative_velocity = v1 - partner.velocity;
    const Vec3 spin = partner.is_wall()
                          ? w1 * r1
                          : w1 * r1 + partner.angular_velocity * partner.radius;
    g.tangential_velocity =
        g.relative_velocity - g.normal * dot(g.relative_velocity, g.normal) + cross(spin, g.normal);
    return g;
}

std::optional<ContactGeometry> contact_geometry(const Vec3& pos1, double r1, const Vec3& pos2,
                                                double r2, const Vec3& v1, const Vec3& v2,
                                                const Vec3& w1, const Vec3& w2) {
    return contact_geometry(pos1, r1, v1, w1, pos2,
                            ContactPartner::make_particle(r2, 0.0, v2, w2, 0));
}

ClosestPoint closest_point_rectangle(const Vec3& pos, const RectWall& rect) {
    const Vec3 rel = pos - rect.corner;
    const double uu = norm_squared(rect.edge_u);
    const double vv = norm_squared(rect.edge_v);
    const double s = std::clamp(dot(rel, rect.edge_u) / uu, 0.0, 1.0);
    const double t = std::clamp(dot(rel, rect.edge_v) / vv, 0.0, 1.0);
    const Vec3 point = rect.corner + rect.edge_u * s + rect.edge_v * t;
    return {point, norm(pos - point)};
}

ClosestPoint closest_point_line(const Vec3& pos, const LineWall& seg) {
    const Vec3 dir = seg.b - seg.a;
    const double t = std::clamp(dot(pos - seg.a, dir) / norm_squared(dir), 0.0, 1.0);
    const Vec3 point = seg.a + dir * t;
    return {point, norm(pos - point)};
}

}  // namespace demforge
