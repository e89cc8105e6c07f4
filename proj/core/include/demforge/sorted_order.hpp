#pragma once

#include <cstdint>
#include <vector>

#include "demforge/bitonic_sort.hpp"

namespace demforge {

/// Cell-sorted particle order: nondecreasing cell keys, the permutation
/// mapping sorted slot -> original index, and per-cell half-open slot
/// ranges. Empty cells have start == end.
struct SortedOrder {
    std::vector<std::uint32_t> sorted_keys;
    std::vector<std::uint32_t> permutation;
    std::vector<std::uint32_t> cell_start;
    std::vector<std::uint32_t> cell_end;
    BitonicStats sort_stats;
};

/// Sorts the given cell keys with the bitonic network and scans the result
/// into per-cell ranges. `keys` is consumed.
SortedOrder build_sorted_order(std::vector<std::uint32_t> keys, std::int64_t cell_count);

/// Boundary scan only (for a pre-sorted key sequence).
void find_cell_bounds(SortedOrder& order, std::int64_t cell_count);

/// Gather: out[i] = in[perm[i]].
template <typename T>
std::vector<T> apply_permutation(const std::vector<T>& in,
                                 const std::vector<std::uint32_t>& perm) {
    std::vector<T> out(in.size());
    for (std::size_t i = 0; i < perm.size(); ++i) out[i] = in[perm[i]];
    return out;
}

/// inverse[perm[i]] = i.
std::vector<std::uint32_t> invert_permutation(const std::vector<std::uint32_t>& perm);

}  // namespace demforge
