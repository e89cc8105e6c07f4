#include <doctest.h>

#include <random>

#include "demforge/warp_model.hpp"

using namespace demforge;

namespace {

WarpCostParams fig2_params() {
    WarpCostParams p;
    p.warp_size = 4;
    p.c_check = 1.0;
    p.c_force = 10.0;
    p.c_store = 1.0;
    p.c_load = 1.0;
    return p;
}

/// W = 4, three events per lane, lane i's single contact at iteration
/// i mod 3 (so every iteration has a contact somewhere).
std::vector<LaneTrace> fig2_warp() {
    std::vector<LaneTrace> traces(4);
    for (int lane = 0; lane < 4; ++lane) {
        for (int j = 0; j < 3; ++j) {
            traces[lane].push_back({j, j == lane % 3});
        }
    }
    return traces;
}

std::vector<LaneTrace> random_traces(std::mt19937_64& rng, int lanes, int max_events,
                                     double contact_probability) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<LaneTrace> traces(lanes);
    for (auto& lane : traces) {
        const int events = static_cast<int>(rng() % (max_events + 1));
        for (int j = 0; j < events; ++j) {
            lane.push_back({j, u(rng) < contact_probability});
        }
    }
    return traces;
}

}  // namespace

TEST_CASE("group_warps") {
    std::vector<LaneTrace> traces(70);
    auto warps = group_warps(traces, 32);
    REQUIRE(warps.size() == 3);
    CHECK(warps[0].size() == 32);
    CHECK(warps[1].size() == 32);
    CHECK(warps[2].size() == 6);

    auto singles = group_warps(traces, 1);
    CHECK(singles.size() == 70);

    std::vector<LaneTrace> empty;
    CHECK(group_warps(empty, 32).empty());
}

TEST_CASE("hand-computed warp fixtures") {
    const auto params = fig2_params();
    const auto traces = fig2_warp();
    const auto warp = std::span<const LaneTrace>(traces);

    SUBCASE("baseline: every iteration pays the force block") {
        CHECK(warp_cycles_baseline(warp, params) == 33.0);  // 3 * (1 + 10)
    }
    SUBCASE("two-phase: stores, then one force iteration") {
        // phase1 = 3 * (1 + 1) = 6, phase2 = 1 * (1 + 10) = 11
        CHECK(warp_cycles_two_phase(warp, params) == 17.0);
    }
    SUBCASE("utilizations 52/132 and 60/68") {
        CHECK(utilization(warp, params, CollideVariant::baseline) ==
              doctest::Approx(52.0 / 132.0).epsilon(1e-15));
        CHECK(utilization(warp, params, CollideVariant::two_phase) ==
              doctest::Approx(60.0 / 68.0).epsilon(1e-15));
    }
    SUBCASE("single lane with two events, contact at the first") {
        std::vector<LaneTrace> one(1);
        one[0] = {{0, true}, {1, false}};
        const auto span1 = std::span<const LaneTrace>(one);
        CHECK(warp_cycles_baseline(span1, params) == 12.0);  // (1 + 10) + 1
        CHECK(utilization(span1, params, CollideVariant::baseline) == 1.0);
        CHECK(utilization(span1, params, CollideVariant::two_phase) == 1.0);
    }
    SUBCASE("no contacts: both variants cost Lmax * c_check") {
        std::vector<LaneTrace> quiet(4);
        for (auto& lane : quiet) lane = {{0, false}, {1, false}, {2, false}, {3, false}, {4, false}};
        const auto span_q = std::span<const LaneTrace>(quiet);
        CHECK(warp_cycles_baseline(span_q, params) == 5.0);
        CHECK(warp_cycles_two_phase(span_q, params) == 5.0);
    }
    SUBCASE("all lanes contact at every iteration: overhead makes two-phase slower") {
        std::vector<LaneTrace> dense(4);
        const int l = 6;
        for (auto& lane : dense) {
            for (int j = 0; j < l; ++j) lane.push_back({j, true});
        }
        const auto span_d = std::span<const LaneTrace>(dense);
        const double base = warp_cycles_baseline(span_d, params);
        const double two = warp_cycles_two_phase(span_d, params);
        CHECK(base == l * (params.c_check + params.c_force));
        CHECK(two == base + l * (params.c_store + params.c_load));
    }
}

TEST_CASE("warp model properties") {
    std::mt19937_64 rng(2024);
    auto params = fig2_params();
    params.c_force = 20.0;

    SUBCASE("conservative lower bound: warp cycles at least any lane's own work") {
        for (int it = 0; it < 2000; ++it) {
            const auto traces = random_traces(rng, 1 + static_cast<int>(rng() % 8), 12, 0.3);
            const auto warp = std::span<const LaneTrace>(traces);
            const double base = warp_cycles_baseline(warp, params);
            const double two = warp_cycles_two_phase(warp, params);
            for (const auto& lane : traces) {
                const double own_base = static_cast<double>(lane.size()) * params.c_check +
                                        static_cast<double>(contact_count(lane)) * params.c_force;
                const double own_two =
                    own_base + static_cast<double>(contact_count(lane)) *
                                   (params.c_store + params.c_load);
                CHECK(base >= own_base - 1e-12);
                CHECK(two >= own_two - 1e-12);
            }
        }
    }

    SUBCASE("monotonicity: adding a contact never lowers the cost") {
        for (int it = 0; it < 2000; ++it) {
            auto traces = random_traces(rng, 4, 10, 0.25);
            const auto warp = std::span<const LaneTrace>(traces);
            const double base = warp_cycles_baseline(warp, params);
            const double two = warp_cycles_two_phase(warp, params);

            // Flip one non-contact event (if any) to a contact.
            bool flipped = false;
            for (auto& lane : traces) {
                for (auto& e : lane) {
                    if (!e.contact) {
                        e.contact = true;
                        flipped = true;
                        break;
                    }
                }
                if (flipped) break;
            }
            if (!flipped) continue;
            CHECK(warp_cycles_baseline(warp, params) >= base);
            CHECK(warp_cycles_two_phase(warp, params) >= two);
        }
    }

    SUBCASE("crossover: free store/load makes two-phase never slower") {
        auto free_params = params;
        free_params.c_store = 0.0;
        free_params.c_load = 0.0;
        for (int it = 0; it < 10000; ++it) {
            const auto traces = random_traces(rng, 1 + static_cast<int>(rng() % 8), 12, 0.35);
            const auto warp = std::span<const LaneTrace>(traces);
            CHECK(warp_cycles_two_phase(warp, free_params) <=
                  warp_cycles_baseline(warp, free_params));
        }
    }

    SUBCASE("aggregate equals the sum over warps") {
        const auto traces = random_traces(rng, 100, 12, 0.3);
        params.warp_size = 16;
        const WarpReport report = model_report(traces, params);
        double base = 0.0, two = 0.0;
        for (const auto warp : group_warps(traces, params.warp_size)) {
            base += warp_cycles_baseline(warp, params);
            two += warp_cycles_two_phase(warp, params);
        }
        CHECK(report.cycles_baseline == base);
        CHECK(report.cycles_two_phase == two);
        CHECK(report.warp_count == 7);
        CHECK(report.utilization_baseline > 0.0);
        CHECK(report.utilization_baseline <= 1.0 + 1e-12);
        CHECK(report.utilization_two_phase <= 1.0 + 1e-12);
    }
}

TEST_CASE("cost parameter validation") {
    WarpCostParams p;
    CHECK_NOTHROW(p.validate());
    p.c_force = 0.5;  // not above c_check
    CHECK_THROWS(p.validate());
    p = WarpCostParams{};
    p.warp_size = 0;
    CHECK_THROWS(p.validate());
    p = WarpCostParams{};
    p.c_store = -1.0;
    CHECK_THROWS(p.validate());
}
