#pragma once

#include <bit>
#include <cstdint>

#include "demforge/contact_table.hpp"
#include "demforge/particle_set.hpp"
#include "demforge/vec3.hpp"

namespace demforge {

/// Exact bit-pattern equality (distinguishes -0.0 from 0.0, unlike ==).
inline bool bitwise_equal(double a, double b) {
    return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

inline bool bitwise_equal(const Vec3& a, const Vec3& b) {
    return bitwise_equal(a.x, b.x) && bitwise_equal(a.y, b.y) && bitwise_equal(a.z, b.z);
}

bool bitwise_equal(const ForceAccumulator& a, const ForceAccumulator& b);
bool bitwise_equal(const ContactTable& a, const ContactTable& b);

}  // namespace demforge
