#include "demforge/compare.hpp"

namespace demforge {

bool bitwise_equal(const ForceAccumulator& a, const ForceAccumulator& b) {
    if (a.force.size() != b.force.size() || a.torque.size() != b.torque.size()) return false;
    for (std::size_t i = 0; i < a.force.size(); ++i) {
        if (!bitwise_equal(a.force[i], b.force[i])) return false;
        if (!bitwise_equal(a.torque[i], b.torque[i])) return false;
    }
    return true;
}

bool bitwise_equal(const ContactTable& a, const ContactTable& b) {
    if (a.particle_count() != b.particle_count() || a.capacity() != b.capacity()) return false;
    for (std::uint32_t p = 0; p < a.particle_count(); ++p) {
        const ContactSlot* ra = a.row(p);
        const ContactSlot* rb = b.row(p);
        for (int k = 0; k < a.capacity(); ++k) {
            if (ra[k].partner != rb[k].partner || ra[k].touched != rb[k].touched ||
                !bitwise_equal(ra[k].delta_t, rb[k].delta_t)) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace demforge
