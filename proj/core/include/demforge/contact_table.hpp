#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "demforge/vec3.hpp"

namespace demforge {

/// One pair entry: the partner ID and the accumulated tangential
/// displacement. Partners >= 0 are particle slot indices; negative values
/// encode walls (see ContactTable::wall_id), so the two ID spaces never
/// collide.
struct ContactSlot {
    std::int32_t partner = std::numeric_limits<std::int32_t>::min();
    bool touched = false;
    Vec3 delta_t{};

    bool empty() const { return partner == std::numeric_limits<std::int32_t>::min(); }

    bool operator==(const ContactSlot&) const = default;
};

/// Sparse per-pair storage of delta_t with a per-step mark/sweep lifecycle.
/// Each particle owns a fixed-capacity row of slots; both particles of a
/// pair hold their own entry (no action-reaction sharing), so a logical
/// thread only ever touches its own row.
class ContactTable {
  public:
    ContactTable() = default;
    ContactTable(std::uint32_t particle_count, int capacity);

    static std::int32_t wall_id(int wall_index) { return -(wall_index + 1); }
    static bool is_wall(std::int32_t partner) { return partner < 0; }

    /// Returns the live slot for (particle, partner), inserting a zero
    /// delta_t entry on first contact. Marks the slot touched. Throws
    /// CapacityError (tagged with `kernel`) when the row is full.
    ContactSlot& lookup_or_insert(std::uint32_t particle, std::int32_t partner,
                                  const std::string& kernel);

    /// The per-step sweep: deletes every untouched slot and clears the
    /// touched flag on the survivors.
    void initialize_contact_ids();

    /// Applies a reordering: row s of the result is row permutation[s] of
    /// the current table, and particle partner IDs are remapped through the
    /// inverse permutation. Wall IDs are left untouched.
    void remap_ids(const std::vector<std::uint32_t>& permutation);

    std::uint32_t particle_count() const { return particle_count_; }
    int capacity() const { return capacity_; }

    int live_count(std::uint32_t particle) const;
    int max_live_count() const;
    std::int64_t total_live() const;

    /// Read-only view of one row (capacity() slots, empties interspersed).
    const ContactSlot* row(std::uint32_t particle) const {
        return slots_.data() + static_cast<std::size_t>(particle) * capacity_;
    }

    /// Pointer to the live slot for the pair, or nullptr.
    const ContactSlot* find(std::uint32_t particle, std::int32_t partner) const;

    bool operator==(const ContactTable&) const = default;

  private:
    std::uint32_t particle_count_ = 0;
    int capacity_ = 0;
    std::vector<ContactSlot> slots_;
};

}  // namespace demforge
