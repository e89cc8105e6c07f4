#include "demforge/bitonic_sort.hpp"

#include <bit>
#include <limits>
#include <stdexcept>
#include <utility>

#include "demforge/parallel.hpp"

namespace demforge {

namespace {
constexpr std::uint32_t kSentinel = std::numeric_limits<std::uint32_t>::max();
}

BitonicStats bitonic_sort(std::vector<std::uint32_t>& keys, std::vector<std::uint32_t>& values) {
    if (keys.size() != values.size()) {
        throw std::invalid_argument("bitonic_sort: keys/values length mismatch");
    }
    BitonicStats stats;
    const std::size_t n = keys.size();
    if (n <= 1) {
        stats.padded_size = n;
        return stats;
    }

    const std::size_t padded = std::bit_ceil(n);
    keys.resize(padded, kSentinel);
    values.resize(padded, kSentinel);

    // Iterative bitonic network. k is the size of the bitonic sequences
    // being merged, j the compare distance within a pass. Comparisons are
    // strict, so equal keys never exchange.
    for (std::size_t k = 2; k <= padded; k <<= 1) {
        ++stats.stages;
        for (std::size_t j = k >> 1; j > 0; j >>= 1) {
            ++stats.passes;
            auto pass = [&](std::size_t begin, std::size_t end) {
                for (std::size_t i = begin; i < end; ++i) {
                    const std::size_t ixj = i ^ j;
                    if (ixj <= i) continue;
                    const bool ascending = (i & k) == 0;
                    const std::uint32_t a = keys[i];
                    const std::uint32_t b = keys[ixj];
                    if (ascending ? a > b : a < b) {
                        keys[i] = b;
                        keys[ixj] = a;
                        std::swap(values[i], values[ixj]);
                    }
                }
            };
            // Each pair is touched only from its smaller index, so chunked
            // execution over i is race-free.
            parallel_for(padded, pass);
        }
    }

    keys.resize(n);
    values.resize(n);
    stats.padded_size = padded;
    stats.compare_exchanges = static_cast<std::uint64_t>(stats.passes) * (padded / 2);
    return stats;
}

}  // namespace demforge
