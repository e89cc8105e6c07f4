#include "demforge/sorted_order.hpp"

#include <numeric>

namespace demforge {

SortedOrder build_sorted_order(std::vector<std::uint32_t> keys, std::int64_t cell_count) {
    SortedOrder order;
    order.permutation.resize(keys.size());
    std::iota(order.permutation.begin(), order.permutation.end(), 0u);
    order.sort_stats = bitonic_sort(keys, order.permutation);
    order.sorted_keys = std::move(keys);
    find_cell_bounds(order, cell_count);
    return order;
}

void find_cell_bounds(SortedOrder& order, std::int64_t cell_count) {
    order.cell_start.assign(static_cast<std::size_t>(cell_count), 0);
    order.cell_end.assign(static_cast<std::size_t>(cell_count), 0);
    const auto& keys = order.sorted_keys;
    for (std::size_t i = 0; i < keys.size(); ++i) {
        const std::uint32_t c = keys[i];
        if (i == 0 || keys[i - 1] != c) order.cell_start[c] = static_cast<std::uint32_t>(i);
        if (i + 1 == keys.size() || keys[i + 1] != c) {
            order.cell_end[c] = static_cast<std::uint32_t>(i + 1);
        }
    }
    // Cells never mentioned keep start == end == 0 (empty range).
}

std::vector<std::uint32_t> invert_permutation(const std::vector<std::uint32_t>& perm) {
    std::vector<std::uint32_t> inv(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = static_cast<std::uint32_t>(i);
    return inv;
}

}  // namespace demforge
