#include <catch2/catch_amalgamated.hpp>

#include <bit>
#include <cmath>
#include <cstdint>

#include "medea/metrics.hpp"

using Catch::Matchers::WithinAbs;
using namespace medea;

TEST_CASE("token ratio and p-n diff") {
    REQUIRE(total_token_ratio(3, 1) == 0.75);
    REQUIRE(total_token_ratio(0, 4) == 0.0);
    REQUIRE(std::isnan(total_token_ratio(0, 0)));
    REQUIRE(pn_diff(3, 1) == 0.5);
    REQUIRE(pn_diff(1, 3) == -0.5);
    REQUIRE(std::isnan(pn_diff(0, 0)));
}

TEST_CASE("window ratio averages the final two epochs and skips missing") {
    RunRecord rec;
    auto epoch = [](double ratio, double diff) {
        EpochRow row;
        row.ratio = ratio;
        row.diff = diff;
        return row;
    };
    rec.epochs = {epoch(0.1, -0.8), epoch(0.4, -0.2), epoch(0.6, 0.2)};
    REQUIRE_THAT(window_ratio(rec), WithinAbs(0.5, 1e-15));
    REQUIRE_THAT(window_diff(rec), WithinAbs(0.0, 1e-15));

    rec.epochs = {epoch(0.1, 0.0), epoch(kMissing, kMissing), epoch(0.6, 0.2)};
    REQUIRE_THAT(window_ratio(rec), WithinAbs(0.6, 1e-15));  // NaN skipped

    rec.epochs = {epoch(kMissing, kMissing), epoch(kMissing, kMissing)};
    REQUIRE(std::isnan(window_ratio(rec)));

    rec.epochs = {epoch(0.3, 0.1)};
    REQUIRE_THAT(window_ratio(rec), WithinAbs(0.3, 1e-15));  // single epoch

    rec.epochs.clear();
    REQUIRE(std::isnan(window_ratio(rec)));
}

TEST_CASE("simulate_run emits one row per complete epoch") {
    SimConfig cfg;
    cfg.robots = 10;
    cfg.token_count = 30;
    cfg.max_iterations = 1000;
    cfg.epoch_length = 250;
    cfg.season_period = 500;

    const RunRecord rec = simulate_run(cfg, 3, 77);
    REQUIRE(rec.run == 3);
    REQUIRE(rec.seed == 77);
    REQUIRE(rec.epochs.size() == 4);
    for (std::size_t e = 0; e < rec.epochs.size(); ++e) {
        REQUIRE(rec.epochs[e].run == 3);
        REQUIRE(rec.epochs[e].epoch == e);
        // Season label of the epoch's first iteration.
        REQUIRE(rec.epochs[e].season == static_cast<int>((e * 250 / 500) % 2));
    }
    // Two full season spans over 1000 iterations.
    REQUIRE(rec.seasons.size() == 2);
    REQUIRE(rec.seasons[0].season == 0);
    REQUIRE(rec.seasons[1].season == 1);

    // Identical seeds reproduce the record bit for bit.
    const RunRecord again = simulate_run(cfg, 3, 77);
    REQUIRE(again.epochs.size() == rec.epochs.size());
    for (std::size_t e = 0; e < rec.epochs.size(); ++e) {
        REQUIRE(again.epochs[e].p == rec.epochs[e].p);
        REQUIRE(again.epochs[e].n == rec.epochs[e].n);
        REQUIRE(again.epochs[e].alive == rec.epochs[e].alive);
        REQUIRE(std::bit_cast<std::uint64_t>(again.epochs[e].mean_energy) ==
                std::bit_cast<std::uint64_t>(rec.epochs[e].mean_energy));
    }
}

TEST_CASE("static runs emit a single whole-run season span") {
    SimConfig cfg;
    cfg.robots = 8;
    cfg.token_count = 20;
    cfg.max_iterations = 400;
    cfg.epoch_length = 200;
    cfg.season_period = 0;

    const RunRecord rec = simulate_run(cfg, 0, 5);
    REQUIRE(rec.epochs.size() == 2);
    REQUIRE(rec.seasons.size() == 1);
    REQUIRE(rec.seasons[0].season == 0);

    // Epoch p/n are per-epoch counts: they sum to the season total.
    std::uint64_t p = 0, n = 0;
    for (const EpochRow& row : rec.epochs) {
        p += row.p;
        n += row.n;
    }
    REQUIRE(p == rec.seasons[0].p);
    REQUIRE(n == rec.seasons[0].n);
}

TEST_CASE("zero iterations produce empty records") {
    SimConfig cfg;
    cfg.robots = 5;
    cfg.token_count = 10;
    cfg.max_iterations = 0;
    const RunRecord rec = simulate_run(cfg, 0, 1);
    REQUIRE(rec.epochs.empty());
    REQUIRE(std::isnan(window_ratio(rec)));
}
