#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "demforge/bitonic_sort.hpp"
#include "demforge/grid.hpp"
#include "demforge/sorted_order.hpp"

using namespace demforge;

TEST_CASE("calc_hash") {
    UniformGrid grid;
    grid.origin = {0, 0, 0};
    grid.cell_size = 1.0;
    grid.nx = grid.ny = grid.nz = 4;

    SUBCASE("interior position") {
        bool clamped = true;
        CHECK(calc_hash({1.5, 0.5, 2.5}, grid, &clamped) == 33);  // (1,0,2)
        CHECK(!clamped);
    }
    SUBCASE("exactly at origin") {
        CHECK(calc_hash({0, 0, 0}, grid) == 0);
    }
    SUBCASE("out of domain clamps and reports it") {
        bool clamped = false;
        CHECK(calc_hash({-3, 0, 0}, grid, &clamped) == 0);
        CHECK(clamped);
        clamped = false;
        CHECK(calc_hash({10, 3.5, 3.5}, grid, &clamped) == grid.linear_index(3, 3, 3));
        CHECK(clamped);
    }
}

TEST_CASE("make_grid defaults and limits") {
    const UniformGrid g = make_grid({0, 0, 0}, {1, 2, 0.5}, 0.05);
    CHECK(g.cell_size == doctest::Approx(0.1 * (1 + 1e-6)));
    CHECK(g.nx == 10);
    CHECK(g.ny == 20);
    CHECK(g.nz == 5);
    CHECK_THROWS(make_grid({0, 0, 0}, {0, 1, 1}, 0.05));
}

TEST_CASE("neighbor_cells") {
    UniformGrid grid;
    grid.origin = {0, 0, 0};
    grid.cell_size = 1.0;
    grid.nx = grid.ny = grid.nz = 4;
    std::array<std::uint32_t, 27> out{};

    SUBCASE("interior cell sees 27") {
        CHECK(neighbor_cells(grid.linear_index(1, 1, 1), grid, out) == 27);
        // Fixed deterministic order: z outer, then y, then x.
        CHECK(out[0] == grid.linear_index(0, 0, 0));
        CHECK(out[1] == grid.linear_index(1, 0, 0));
        CHECK(out[26] == grid.linear_index(2, 2, 2));
    }
    SUBCASE("corner cell sees 8") {
        CHECK(neighbor_cells(grid.linear_index(0, 0, 0), grid, out) == 8);
    }
    SUBCASE("1x1x1 grid sees itself") {
        UniformGrid tiny;
        tiny.cell_size = 1.0;
        tiny.nx = tiny.ny = tiny.nz = 1;
        CHECK(neighbor_cells(0, tiny, out) == 1);
        CHECK(out[0] == 0);
    }
}

TEST_CASE("bitonic sort") {
    SUBCASE("small example") {
        std::vector<std::uint32_t> keys{3, 1, 2, 0};
        std::vector<std::uint32_t> values{0, 1, 2, 3};
        bitonic_sort(keys, values);
        CHECK(keys == std::vector<std::uint32_t>{0, 1, 2, 3});
        CHECK(values == std::vector<std::uint32_t>{3, 1, 2, 0});
    }
    SUBCASE("already sorted distinct keys keep the identity permutation") {
        std::vector<std::uint32_t> keys{0, 1, 2, 3, 4, 5, 6, 7};
        std::vector<std::uint32_t> values{0, 1, 2, 3, 4, 5, 6, 7};
        bitonic_sort(keys, values);
        CHECK(values == std::vector<std::uint32_t>{0, 1, 2, 3, 4, 5, 6, 7});
    }
    SUBCASE("all-equal keys never swap") {
        std::vector<std::uint32_t> keys(16, 9);
        std::vector<std::uint32_t> values(16);
        std::iota(values.begin(), values.end(), 0u);
        bitonic_sort(keys, values);
        for (std::uint32_t i = 0; i < 16; ++i) CHECK(values[i] == i);
    }
    SUBCASE("network structure for a power-of-two size") {
        std::vector<std::uint32_t> keys(8, 1);
        std::vector<std::uint32_t> values(8, 0);
        const BitonicStats stats = bitonic_sort(keys, values);
        CHECK(stats.padded_size == 8);
        CHECK(stats.stages == 3);
        CHECK(stats.passes == 6);  // 1 + 2 + 3
        CHECK(stats.compare_exchanges == 6 * 4);
    }
    SUBCASE("non-power-of-two sizes pad and strip") {
        std::vector<std::uint32_t> keys{5, 5, 5, 1, 1};
        std::vector<std::uint32_t> values{0, 1, 2, 3, 4};
        const BitonicStats stats = bitonic_sort(keys, values);
        CHECK(stats.padded_size == 8);
        CHECK(keys.size() == 5);
        CHECK(keys == std::vector<std::uint32_t>{1, 1, 5, 5, 5});
    }
    SUBCASE("matches a reference sort over random inputs, sizes 1..4096") {
        std::mt19937_64 rng(123);
        for (int it = 0; it < 1000; ++it) {
            const std::size_t n = 1 + rng() % 4096;
            std::vector<std::uint32_t> keys(n);
            std::vector<std::uint32_t> values(n);
            const std::uint32_t key_range = 1 + static_cast<std::uint32_t>(rng() % 64);
            for (std::size_t i = 0; i < n; ++i) {
                keys[i] = static_cast<std::uint32_t>(rng() % key_range);
                values[i] = static_cast<std::uint32_t>(i);
            }
            std::vector<std::uint32_t> expected_keys = keys;
            std::sort(expected_keys.begin(), expected_keys.end());

            std::vector<std::uint32_t> got_keys = keys;
            std::vector<std::uint32_t> got_values = values;
            bitonic_sort(got_keys, got_values);

            REQUIRE(got_keys == expected_keys);
            // (key, value) pairs must be a permutation of the input.
            std::vector<std::uint32_t> perm_sorted = got_values;
            std::sort(perm_sorted.begin(), perm_sorted.end());
            bool is_permutation = true;
            for (std::size_t i = 0; i < n; ++i) {
                if (perm_sorted[i] != i) is_permutation = false;
            }
            REQUIRE(is_permutation);
            for (std::size_t i = 0; i < n; ++i) REQUIRE(keys[got_values[i]] == got_keys[i]);
        }
    }
}

TEST_CASE("cell bounds and reordering") {
    SUBCASE("boundary scan") {
        SortedOrder order;
        order.sorted_keys = {0, 0, 1, 3};
        order.permutation = {0, 1, 2, 3};
        find_cell_bounds(order, 4);
        CHECK(order.cell_start[0] == 0);
        CHECK(order.cell_end[0] == 2);
        CHECK(order.cell_start[1] == 2);
        CHECK(order.cell_end[1] == 3);
        CHECK(order.cell_start[2] == order.cell_end[2]);  // empty
        CHECK(order.cell_start[3] == 3);
        CHECK(order.cell_end[3] == 4);
    }
    SUBCASE("single particle") {
        SortedOrder order = build_sorted_order({2}, 4);
        CHECK(order.permutation == std::vector<std::uint32_t>{0});
        CHECK(order.cell_start[2] == 0);
        CHECK(order.cell_end[2] == 1);
    }
    SUBCASE("reorder round-trips through the inverse permutation") {
        std::mt19937_64 rng(5);
        std::vector<std::uint32_t> keys(33);
        for (auto& k : keys) k = static_cast<std::uint32_t>(rng() % 7);
        const SortedOrder order = build_sorted_order(keys, 7);

        std::vector<double> data(33);
        for (std::size_t i = 0; i < data.size(); ++i) data[i] = static_cast<double>(i) * 1.5;
        const auto reordered = apply_permutation(data, order.permutation);
        const auto inverse = invert_permutation(order.permutation);
        const auto back = apply_permutation(reordered, inverse);
        CHECK(back == data);
    }
}
