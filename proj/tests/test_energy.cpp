#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "medea/energy.hpp"
#include "medea/rng.hpp"

using Catch::Matchers::WithinAbs;
using namespace medea;

static const EnergyParams kP{};

TEST_CASE("step cost endpoints") {
    // Fixed cost of living only.
    REQUIRE(step_cost(0.0, 0.0, kP) == 0.5);
    // Full speed on both channels.
    REQUIRE_THAT(step_cost(kP.v_rot_max, kP.v_trans_max, kP), WithinAbs(1.0, 1e-15));
    // Half rotation, no translation: 0.5 + (0.5 + 0)/4.
    REQUIRE_THAT(step_cost(kP.v_rot_max / 2.0, 0.0, kP), WithinAbs(0.625, 1e-15));
    // Rotation direction does not matter.
    REQUIRE(step_cost(-kP.v_rot_max, kP.v_trans_max, kP) == step_cost(kP.v_rot_max, kP.v_trans_max, kP));
}

TEST_CASE("step cost bounded") {
    Rng rng(3);
    for (int i = 0; i < 10000; ++i) {
        const double vr = rng.uniform(-kP.v_rot_max, kP.v_rot_max);
        const double vt = rng.uniform(0.0, kP.v_trans_max);
        const double e = step_cost(vr, vt, kP);
        REQUIRE(e >= 0.5);
        REQUIRE(e <= 1.0 + 1e-12);
    }
}

TEST_CASE("communication cost constants") {
    REQUIRE(comm_cost(1, {}, kP) == 0.0305);
    const std::vector<double> d0{0.0};
    REQUIRE(comm_cost(0, d0, kP) == 0.01379);
    const std::vector<double> d128{128.0};
    REQUIRE_THAT(comm_cost(0, d128, kP), WithinAbs(10.073566, 1e-9));
    REQUIRE_THAT(comm_cost(0, d128, kP), WithinAbs(10.0735, 1e-4));
    // Additivity over receivers and transmissions.
    const std::vector<double> both{0.0, 128.0};
    REQUIRE_THAT(comm_cost(2, both, kP),
                 WithinAbs(2 * 0.0305 + 0.01379 + 10.073566, 1e-9));
}

TEST_CASE("energy update examples") {
    // Collect one positive balanced token while idle.
    const std::vector<double> plus{625.0};
    auto u = update_energy(500.0, 0.5, 0.0, plus);
    REQUIRE(u.energy == 1124.5);
    REQUIRE(u.balance == 624.5);
    REQUIRE(u.row.energy_before == 500.0);
    REQUIRE(u.row.energy_after == 1124.5);

    // Collect one negative token.
    const std::vector<double> minus{-400.0};
    u = update_energy(500.0, 0.5, 0.0, minus);
    REQUIRE(u.energy == 99.5);
    REQUIRE(u.balance == -400.5);

    // Clamped at zero, balance keeps the pre-clamp value.
    u = update_energy(10.0, 0.5, 20.0, {});
    REQUIRE(u.energy == 0.0);
    REQUIRE(u.balance == -20.5);
    REQUIRE(u.row.energy_after == -10.5);
}

TEST_CASE("ledger closure fuzz") {
    Rng rng(17);
    for (int i = 0; i < 20000; ++i) {
        const double e0 = rng.uniform(0.0, 2000.0);
        const double vr = rng.uniform(-kP.v_rot_max, kP.v_rot_max);
        const double vt = rng.uniform(0.0, kP.v_trans_max);
        const std::uint32_t rx = static_cast<std::uint32_t>(rng.uniform_index(6));
        std::vector<double> tx(rng.uniform_index(5));
        for (double& d : tx) d = rng.uniform(0.0, 128.0);
        std::vector<double> tokens(rng.uniform_index(3));
        for (double& v : tokens) v = rng.uniform() < 0.5 ? -400.0 : rng.uniform(100.0, 1300.0);

        const double es = step_cost(vr, vt, kP);
        const double ec = comm_cost(rx, tx, kP);
        const auto u = update_energy(e0, es, ec, tokens);

        REQUIRE_THAT(u.row.energy_after,
                     WithinAbs(u.row.energy_before - u.row.e_step - u.row.e_com + u.row.token_gain,
                               1e-9));
        REQUIRE_THAT(u.balance, WithinAbs(u.row.token_gain - es - ec, 1e-9));
        REQUIRE(u.energy == (u.row.energy_after < 0.0 ? 0.0 : u.row.energy_after));
    }
}
