#pragma once

#include <cstdint>
#include <vector>

namespace demforge {

/// Structural counts of the executed sorting network. compare_exchanges is
/// fixed by the network shape (passes * padded/2), independent of the data.
struct BitonicStats {
    std::size_t padded_size = 0;
    int stages = 0;
    int passes = 0;
    std::uint64_t compare_exchanges = 0;
};

/// Sorts (key, value) pairs by key with the full iterative bitonic
/// compare-exchange network; the stage/pass structure is executed even for
/// already-sorted input. Input of any length is padded internally to the
/// next power of two with a maximal sentinel key and the padding is
/// stripped before returning. Equal keys never exchange, so the permutation
/// of tied keys is the deterministic one the network produces.
BitonicStats bitonic_sort(std::vector<std::uint32_t>& keys, std::vector<std::uint32_t>& values);

}  // namespace demforge
