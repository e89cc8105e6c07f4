#include "demforge/contact_table.hpp"

#include <algorithm>

#include "demforge/error.hpp"
#include "demforge/sorted_order.hpp"

namespace demforge {

ContactTable::ContactTable(std::uint32_t particle_count, int capacity)
    : particle_count_(particle_count),
      capacity_(capacity),
      slots_(static_cast<std::size_t>(particle_count) * capacity) {}

ContactSlot& ContactTable::lookup_or_insert(std::uint32_t particle, std::int32_t partner,
                                            const std::string& kernel) {
    ContactSlot* base = slots_.data() + static_cast<std::size_t>(particle) * capacity_;
    ContactSlot* free_slot = nullptr;
    for (int k = 0; k < capacity_; ++k) {
        ContactSlot& slot = base[k];
        if (slot.empty()) {
            if (!free_slot) free_slot = &slot;
            continue;
        }
        if (slot.partner == partner) {
            slot.touched = true;
            return slot;
        }
    }
    if (!free_slot) throw CapacityError(kernel, particle, capacity_);
    free_slot->partner = partner;
    free_slot->touched = true;
    free_slot->delta_t = Vec3{};  // first contact starts from zero
    return *free_slot;
}

void ContactTable::initialize_contact_ids() {
    for (auto& slot : slots_) {
        if (slot.empty()) continue;
        if (slot.touched) {
            slot.touched = false;
        } else {
            slot = ContactSlot{};
        }
    }
}

void ContactTable::remap_ids(const std::vector<std::uint32_t>& permutation) {
    const std::vector<std::uint32_t> inverse = invert_permutation(permutation);
    std::vector<ContactSlot> remapped(slots_.size());
    for (std::uint32_t s = 0; s < particle_count_; ++s) {
        const ContactSlot* src = row(permutation[s]);
        ContactSlot* dst = remapped.data() + static_cast<std::size_t>(s) * capacity_;
        for (int k = 0; k < capacity_; ++k) {
            ContactSlot slot = src[k];
            if (!slot.empty() && !is_wall(slot.partner)) {
                slot.partner = static_cast<std::int32_t>(inverse[slot.partner]);
            }
            dst[k] = slot;
        }
    }
    slots_ = std::move(remapped);
}

int ContactTable::live_count(std::uint32_t particle) const {
    const ContactSlot* base = row(particle);
    int n = 0;
    for (int k = 0; k < capacity_; ++k) {
        if (!base[k].empty()) ++n;
    }
    return n;
}

int ContactTable::max_live_count() const {
    int best = 0;
    for (std::uint32_t p = 0; p < particle_count_; ++p) best = std::max(best, live_count(p));
    return best;
}

std::int64_t ContactTable::total_live() const {
    std::int64_t n = 0;
    for (const auto& slot : slots_) {
        if (!slot.empty()) ++n;
    }
    return n;
}

const ContactSlot* ContactTable::find(std::uint32_t particle, std::int32_t partner) const {
    const ContactSlot* base = row(particle);
    for (int k = 0; k < capacity_; ++k) {
        if (!base[k].empty() && base[k].partner == partner) return &base[k];
    }
    return nullptr;
}

}  // namespace demforge
