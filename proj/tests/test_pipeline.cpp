#include <doctest.h>

#include <cmath>
#include <random>

#include "demforge/compare.hpp"
#include "demforge/contact_mechanics.hpp"
#include "demforge/error.hpp"
#include "demforge/oracle.hpp"
#include "demforge/parallel.hpp"
#include "demforge/pipeline.hpp"

using namespace demforge;

namespace {

SimConfig basic_config(double box = 1.0) {
    SimConfig cfg;
    cfg.dt = 1e-5;
    cfg.gravity = {};
    cfg.domain_min = {0, 0, 0};
    cfg.domain_max = {box, box, box};
    MaterialParams mat;
    mat.poisson_ratio = 0.3;
    mat.shear_modulus = 3.85e5;
    mat.youngs_modulus = 1e6;
    mat.restitution = 0.9;
    mat.sliding_friction = 0.3;
    cfg.materials.add("bead", mat);
    cfg.particles.count = 1;  // placeholder; direct states bypass the lattice
    cfg.particles.radius = 0.005;
    cfg.particles.mass = 1.309e-3;
    cfg.particles.material = "bead";
    return cfg;
}

/// Jittered sub-diameter lattice: guaranteed overlaps, random motion,
/// mixed radii.
ParticleSet random_dense_state(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double r0 = 0.005;
    const double spacing = 1.7 * r0;
    const int side = static_cast<int>(std::ceil(std::cbrt(static_cast<double>(n))));
    ParticleSet state;
    for (std::size_t i = 0; i < n; ++i) {
        const int ix = static_cast<int>(i) % side;
        const int iy = static_cast<int>(i / side) % side;
        const int iz = static_cast<int>(i / (side * side));
        Vec3 pos{0.02 + ix * spacing, 0.02 + iy * spacing, 0.02 + iz * spacing};
        pos.x += 0.1 * spacing * u(rng);
        pos.y += 0.1 * spacing * u(rng);
        pos.z += 0.1 * spacing * u(rng);
        const double r = r0 * (0.8 + 0.2 * std::abs(u(rng)));
        state.push_back(static_cast<std::uint32_t>(i), pos,
                        {0.5 * u(rng), 0.5 * u(rng), 0.5 * u(rng)},
                        {5.0 * u(rng), 5.0 * u(rng), 5.0 * u(rng)}, r, 1.3e-3, 0);
    }
    return state;
}

double box_for(std::size_t n) {
    const int side = static_cast<int>(std::ceil(std::cbrt(static_cast<double>(n))));
    return 0.05 + side * 1.7 * 0.005;
}

/// Advances to the next pre-collide point (mirrors the step kernel order,
/// gravity skipped so accumulators hold pure collide output afterwards).
void advance_to_collide(Simulation& sim) {
    sim.kernel_integrate();
    sim.kernel_calc_hash();
    sim.kernel_bitonic_sort();
    sim.kernel_find_cell_bounds_and_reorder();
    sim.zero_forces();
    sim.kernel_initialize_contact_ids();
}

}  // namespace

TEST_CASE("integrate") {
    SimConfig cfg = basic_config();
    cfg.dt = 1e-3;

    ParticleSet state;
    state.push_back(0, {0.5, 0.5, 0.5}, {}, {}, 0.005, 2.0, 0);

    SUBCASE("one Euler step under a constant force") {
        ForceAccumulator forces;
        forces.resize(1);
        forces.force[0] = {0, 0, 2.0 * -9.8};  // F = m g
        integrate(state, forces, cfg.dt);
        CHECK(state.velocities[0].z == doctest::Approx(-9.8e-3).epsilon(1e-12));
        CHECK(state.positions[0].z ==
              doctest::Approx(0.5 - 9.8e-3 * 1e-3).epsilon(1e-12));  // uses the new velocity
    }
    SUBCASE("zero force keeps uniform motion") {
        state.velocities[0] = {1, 2, 3};
        state.angular_velocities[0] = {4, 5, 6};
        ForceAccumulator forces;
        forces.resize(1);
        integrate(state, forces, cfg.dt);
        CHECK(state.positions[0].x == doctest::Approx(0.5 + 1e-3));
        CHECK(state.angular_velocities[0] == Vec3{4, 5, 6});
    }
    SUBCASE("torque spins up with I = (2/5) m r^2") {
        ForceAccumulator forces;
        forces.resize(1);
        forces.torque[0] = {0, 0, 3e-4};
        integrate(state, forces, cfg.dt);
        const double inertia = 0.4 * 2.0 * 0.005 * 0.005;
        CHECK(state.angular_velocities[0].z ==
              doctest::Approx(3e-4 * 1e-3 / inertia).epsilon(1e-12));
    }
    SUBCASE("non-finite force aborts") {
        ForceAccumulator forces;
        forces.resize(1);
        forces.force[0].x = std::numeric_limits<double>::quiet_NaN();
        CHECK_THROWS_AS(integrate(state, forces, cfg.dt), KernelError);
    }
}

TEST_CASE("force_gravity") {
    ParticleSet state;
    state.push_back(0, {0, 0, 0}, {}, {}, 1.0, 2.0, 0);
    state.push_back(1, {1, 0, 0}, {}, {}, 1.0, 6.0, 0);
    ForceAccumulator forces;
    forces.resize(2);
    force_gravity(state, forces, {0, 0, -9.8});
    CHECK(forces.force[0].z == doctest::Approx(-19.6));
    CHECK(forces.force[1].z == doctest::Approx(-58.8));  // 1:3 mass ratio
    CHECK(forces.torque[0] == Vec3{});
    force_gravity(state, forces, {});
    CHECK(forces.force[0].z == doctest::Approx(-19.6));  // unchanged by g = 0
}

TEST_CASE("collide traces") {
    SimConfig cfg = basic_config(0.2);

    SUBCASE("separated pair in neighbor cells: one candidate, no contact") {
        // 2.5 r apart, placed so the two cells are adjacent.
        ParticleSet state;
        state.push_back(0, {0.0505, 0.0505, 0.0505}, {}, {}, 0.005, 1e-3, 0);
        state.push_back(1, {0.063, 0.0505, 0.0505}, {}, {}, 0.005, 1e-3, 0);
        Simulation sim(std::move(state), cfg);
        advance_to_collide(sim);
        sim.kernel_collide(CollideVariant::baseline, true);
        REQUIRE(sim.traces().size() == 2);
        CHECK(sim.traces()[0].size() == 1);
        CHECK(!sim.traces()[0][0].contact);
        CHECK(norm(sim.forces().force[0]) == 0.0);
    }
    SUBCASE("isolated particle: empty trace, zero force") {
        ParticleSet state;
        state.push_back(0, {0.1, 0.1, 0.1}, {}, {}, 0.005, 1e-3, 0);
        Simulation sim(std::move(state), cfg);
        advance_to_collide(sim);
        sim.kernel_collide(CollideVariant::baseline, true);
        CHECK(sim.traces()[0].empty());
        CHECK(norm(sim.forces().force[0]) == 0.0);
    }
}

TEST_CASE("collide matches the O(N^2) oracle bitwise") {
    SimConfig cfg = basic_config(box_for(64));
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        Simulation sim(random_dense_state(64, seed), cfg);
        // Two rounds so the second one exercises nonzero delta_t history.
        for (int round = 0; round < 2; ++round) {
            advance_to_collide(sim);
            const ContactTable table_before = sim.contact_table();
            sim.kernel_collide(CollideVariant::baseline, true);

            const OracleResult oracle =
                oracle_collide(sim.particles(), cfg.materials, sim.grid(), cfg.dt, table_before);
            REQUIRE(bitwise_equal(sim.forces(), oracle.forces));
            REQUIRE(bitwise_equal(sim.contact_table(), oracle.table));

            // Contact event sequences line up too.
            std::vector<std::pair<std::uint32_t, std::uint32_t>> events;
            for (std::uint32_t i = 0; i < sim.traces().size(); ++i) {
                for (const auto& e : sim.traces()[i]) {
                    if (e.contact) events.emplace_back(i, static_cast<std::uint32_t>(e.candidate));
                }
            }
            REQUIRE(events == oracle.contact_events);
            REQUIRE(!events.empty());
        }
    }
}

TEST_CASE("two-phase collide is bitwise identical to baseline") {
    SimConfig cfg = basic_config(box_for(125));
    for (std::uint64_t seed : {7ull, 8ull}) {
        Simulation base(random_dense_state(125, seed), cfg);
        Simulation two = base;
        for (int round = 0; round < 3; ++round) {
            advance_to_collide(base);
            advance_to_collide(two);
            base.kernel_collide(CollideVariant::baseline, true);
            two.kernel_collide(CollideVariant::two_phase, true);
            REQUIRE(bitwise_equal(base.forces(), two.forces()));
            REQUIRE(bitwise_equal(base.contact_table(), two.contact_table()));
            REQUIRE(base.traces() == two.traces());
        }
    }
}

TEST_CASE("full step with either variant gives identical end states") {
    SimConfig cfg = basic_config(box_for(64));
    cfg.run.collide_variant = CollideVariant::baseline;
    Simulation a(random_dense_state(64, 11), cfg);
    Simulation b = a;
    b.set_collide_variant(CollideVariant::two_phase);
    for (int s = 0; s < 5; ++s) {
        a.step();
        b.step();
    }
    CHECK(a.particles() == b.particles());
    CHECK(bitwise_equal(a.contact_table(), b.contact_table()));
}

TEST_CASE("wall kernels") {
    SimConfig cfg = basic_config(0.2);
    cfg.rect_walls.push_back({{0, 0, 0}, {0.2, 0, 0}, {0, 0.2, 0}, 0});  // z = 0 floor

    SUBCASE("resting particle gets the pure normal Hertz force") {
        ParticleSet state;
        const double r = 0.005;
        const double overlap = 0.0002;
        state.push_back(0, {0.1, 0.1, r - overlap}, {}, {}, r, 1.3e-3, 0);
        Simulation sim(std::move(state), cfg);
        advance_to_collide(sim);
        sim.kernel_collide(CollideVariant::baseline, false);
        CHECK(norm(sim.forces().force[0]) == 0.0);  // no particle partners
        sim.kernel_collide_rectangle();
        const MaterialParams& mat = cfg.materials.params(0);
        const auto coeffs =
            contact_coefficients(overlap, mat, mat, r, 0, 1.3e-3, 0, mat.restitution, true);
        const double expected = coeffs.k_n * overlap * std::sqrt(overlap);
        CHECK(sim.forces().force[0].z == doctest::Approx(expected).epsilon(1e-9));
        CHECK(std::abs(sim.forces().force[0].x) < 1e-18);
        // Contact history sits under the wall's ID.
        CHECK(sim.contact_table().find(0, ContactTable::wall_id(0)) != nullptr);
    }

    SUBCASE("sliding on the floor caps at mu |F_n|") {
        ParticleSet state;
        const double r = 0.005;
        state.push_back(0, {0.08, 0.1, r - 0.0003}, {0.5, 0, 0}, {}, r, 1.3e-3, 0);
        Simulation sim(std::move(state), cfg);
        StepMetrics last{};
        double max_ratio = 0.0;
        for (int s = 0; s < 40; ++s) {
            last = sim.step();
            max_ratio = std::max(max_ratio, last.friction_max_ratio);
        }
        CHECK(max_ratio > 0.5);  // the cap actually engaged at some point
        CHECK(max_ratio <= 1.0 + 1e-9);
    }

    SUBCASE("particle away from every wall gets no wall force") {
        ParticleSet state;
        state.push_back(0, {0.1, 0.1, 0.1}, {}, {}, 0.005, 1.3e-3, 0);
        Simulation sim(std::move(state), cfg);
        advance_to_collide(sim);
        sim.kernel_collide_rectangle();
        sim.kernel_collide_line();
        CHECK(norm(sim.forces().force[0]) == 0.0);
    }

    SUBCASE("line wall contact force points away from the segment") {
        SimConfig line_cfg = basic_config(0.2);
        line_cfg.line_walls.push_back({{0, 0.1, 0.05}, {0.2, 0.1, 0.05}, 0});
        ParticleSet state;
        state.push_back(0, {0.1, 0.1, 0.05 + 0.0048}, {}, {}, 0.005, 1.3e-3, 0);
        Simulation sim(std::move(state), line_cfg);
        advance_to_collide(sim);
        sim.kernel_collide_line();
        CHECK(sim.forces().force[0].z > 0.0);
        CHECK(std::abs(sim.forces().force[0].x) < 1e-18);
    }
}

TEST_CASE("step pipeline") {
    SUBCASE("single particle free-fall: first step already sees gravity") {
        SimConfig cfg = basic_config(1.0);
        cfg.gravity = {0, 0, -9.8};
        cfg.dt = 1e-3;
        ParticleSet state;
        state.push_back(0, {0.5, 0.5, 0.5}, {}, {}, 0.005, 2.0, 0);
        Simulation sim(std::move(state), cfg);
        sim.step();
        CHECK(sim.particles().velocities[0].z == doctest::Approx(-9.8e-3).epsilon(1e-12));
        CHECK(sim.particles().positions[0].z ==
              doctest::Approx(0.5 - 9.8e-3 * 1e-3).epsilon(1e-12));
    }

    SUBCASE("determinism: identical states stay bitwise identical over steps") {
        SimConfig cfg = basic_config(box_for(64));
        Simulation a(random_dense_state(64, 21), cfg);
        Simulation b(random_dense_state(64, 21), cfg);
        for (int s = 0; s < 20; ++s) {
            a.step();
            b.step();
        }
        CHECK(a.particles() == b.particles());
    }

    SUBCASE("momentum is conserved without gravity or walls") {
        SimConfig cfg = basic_config(box_for(125));
        Simulation sim(random_dense_state(125, 31), cfg);
        sim.set_record_traces(false);
        const Vec3 p0 = total_momentum(sim.particles());
        std::int64_t contact_events = 0;
        for (int s = 0; s < 400; ++s) contact_events += sim.step().contacts;
        const double drift = norm(total_momentum(sim.particles()) - p0);
        CHECK(contact_events > 0);
        CHECK(drift <= 1e-9 * norm(p0));
    }

    SUBCASE("kinetic energy does not grow across contact-free samples") {
        SimConfig cfg = basic_config(box_for(64));
        Simulation sim(random_dense_state(64, 41), cfg);
        sim.set_record_traces(false);
        double last_free_ke = -1.0;
        bool previous_free = false;
        std::int64_t contact_events = 0;
        for (int s = 0; s < 600; ++s) {
            const StepMetrics m = sim.step();
            contact_events += m.contacts;
            if (s % 10 != 0) continue;
            if (m.contacts == 0) {
                const double ke = total_kinetic_energy(sim.particles());
                if (previous_free && last_free_ke >= 0.0) {
                    CHECK(ke <= last_free_ke * (1.0 + 1e-9));
                }
                last_free_ke = ke;
                previous_free = true;
            } else {
                previous_free = false;
            }
        }
        CHECK(contact_events > 0);
    }

    SUBCASE("metrics carry clamp counts") {
        SimConfig cfg = basic_config(0.05);
        ParticleSet state;
        state.push_back(0, {0.2, 0.2, 0.2}, {}, {}, 0.005, 1.3e-3, 0);  // out of domain
        Simulation sim(std::move(state), cfg);
        const StepMetrics m = sim.step();
        CHECK(m.clamps == 1);
        CHECK(m.contacts == 0);
    }

    SUBCASE("contact capacity overflow aborts with the kernel name") {
        SimConfig cfg = basic_config(box_for(27));
        cfg.contact_capacity = 1;
        bool threw = false;
        try {
            Simulation sim(random_dense_state(27, 51), cfg);  // the priming pass collides
            sim.step();
        } catch (const CapacityError& e) {
            threw = true;
            CHECK(std::string(e.what()).find("Collide") != std::string::npos);
        }
        CHECK(threw);
    }
}

TEST_CASE("thread count does not change results") {
    SimConfig cfg = basic_config(box_for(1331));
    set_thread_count(1);
    Simulation serial(random_dense_state(1331, 61), cfg);
    set_thread_count(4);
    Simulation parallel(random_dense_state(1331, 61), cfg);
    for (int s = 0; s < 3; ++s) {
        set_thread_count(1);
        serial.step();
        set_thread_count(4);
        parallel.step();
    }
    set_thread_count(1);
    CHECK(serial.particles() == parallel.particles());
    CHECK(bitwise_equal(serial.contact_table(), parallel.contact_table()));
    CHECK(bitwise_equal(serial.forces(), parallel.forces()));
}

TEST_CASE("restitution of a head-on pair lands near the target") {
    SimConfig cfg = basic_config(0.1);
    cfg.dt = 1e-5;
    MaterialParams mat = cfg.materials.params(0);
    mat.sliding_friction = 0.0;  // purely normal collision
    cfg.materials = MaterialTable{};
    cfg.materials.add("bead", mat);

    ParticleSet state;
    const double r = 0.005;
    state.push_back(0, {0.045, 0.05, 0.05}, {0.5, 0, 0}, {}, r, 1.309e-3, 0);
    state.push_back(1, {0.056, 0.05, 0.05}, {-0.5, 0, 0}, {}, r, 1.309e-3, 0);
    Simulation sim(std::move(state), cfg);
    sim.set_record_traces(false);

    std::int64_t contact_steps = 0;
    for (int s = 0; s < 1500; ++s) {
        if (sim.step().contacts > 0) ++contact_steps;
    }
    REQUIRE(contact_steps >= 200);
    const auto& v = sim.particles().velocities;
    const double v_out = std::abs(v[1].x - v[0].x);
    CHECK(v_out > 0.855);  // closing speed was exactly 1
    CHECK(v_out < 0.945);
}
