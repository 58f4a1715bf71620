#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "medea/learning.hpp"

using Catch::Matchers::WithinAbs;
using namespace medea;

TEST_CASE("multiplier update rule worked example") {
    // First consumption of the only seen type: share C_x/C_total = 1, value
    // ratio 625/(625-(-400)); LR 1.02, LS +1 -> m' = 0.02 * 625/1025.
    const double m = multiplier_update_rule(0.0, 1.0, 1.02, 1, 1, 625.0, 625.0, -400.0);
    REQUIRE_THAT(m, WithinAbs(0.0121951219512195, 1e-13));
}

TEST_CASE("multiplier update rule properties") {
    // Clamping at both ends.
    REQUIRE(multiplier_update_rule(0.99, 1.0, 1.5, 1, 10, 1300.0, 1300.0, -400.0) <= 1.0);
    REQUIRE(multiplier_update_rule(-0.99, -1.0, 1.5, 1, 10, 1300.0, 1300.0, -400.0) >= -1.0);
    // Degenerate observed range: no movement.
    REQUIRE(multiplier_update_rule(0.3, 1.0, 1.02, 2, 5, 625.0, 625.0, 625.0) == 0.3);
    // Negative sign reverses the step.
    const double up = multiplier_update_rule(0.0, 1.0, 1.2, 1, 2, 500.0, 500.0, -400.0);
    const double dn = multiplier_update_rule(0.0, -1.0, 1.2, 1, 2, 500.0, 500.0, -400.0);
    REQUIRE_THAT(up, WithinAbs(-dn, 1e-15));
}

namespace {

Genome genome_with_multipliers(Variant v, double m0, double m1, double lr, double ls) {
    Genome g;
    g.variant = v;
    g.learn_lr = lr;
    g.learn_ls = ls;
    g.init_multipliers = {{0, m0}, {1, m1}};
    return g;
}

}  // namespace

TEST_CASE("detection initialises per variant") {
    Rng rng(61);
    Genome g = genome_with_multipliers(Variant::EVO, 0.7, -0.2, 0.0, 0.0);

    SECTION("baseline starts at one") {
        MultiplierSet s;
        Genome base;
        base.variant = Variant::Baseline;
        s.reset(Variant::Baseline, base, 1.02, ValueScope::PerType);
        REQUIRE(s.on_token_detected(0, base, rng) == 1.0);
        REQUIRE(s.multiplier(0) == 1.0);
        REQUIRE_FALSE(s.knows(1));
        REQUIRE(s.multiplier(1) == 0.0);  // unknown type reads as 0
    }

    SECTION("il draws a fresh random value") {
        Genome il;
        il.variant = Variant::IL;
        il.learn_ls = 0.4;
        MultiplierSet s;
        s.reset(Variant::IL, il, 1.02, ValueScope::PerType);
        Rng replay = rng;  // same stream
        const double expect = replay.uniform(-1.0, 1.0);
        REQUIRE(s.on_token_detected(5, il, rng) == expect);
        REQUIRE(s.learning_rate() == 1.02);  // fixed LR for IL
        REQUIRE(s.learning_sign() == 1.0);   // sign of evolved LS
    }

    SECTION("evo inherits from the genome") {
        MultiplierSet s;
        s.reset(Variant::EVO, g, 1.02, ValueScope::PerType);
        REQUIRE(s.on_token_detected(0, g, rng) == 0.7);
        REQUIRE(s.on_token_detected(1, g, rng) == -0.2);
        // Repeat sight returns the registered value, no re-init.
        REQUIRE(s.on_token_detected(0, g, rng) == 0.7);
    }

    SECTION("evo falls back to random for unknown types") {
        MultiplierSet s;
        s.reset(Variant::EVO, g, 1.02, ValueScope::PerType);
        Rng replay = rng;
        const double expect = replay.uniform(-1.0, 1.0);
        REQUIRE(s.on_token_detected(9, g, rng) == expect);
    }

    SECTION("evo_il takes genome lr and ls sign") {
        Genome full = genome_with_multipliers(Variant::EVO_IL, 0.1, 0.2, 1.37, -0.25);
        MultiplierSet s;
        s.reset(Variant::EVO_IL, full, 1.02, ValueScope::PerType);
        REQUIRE(s.learning_rate() == 1.37);
        REQUIRE(s.learning_sign() == -1.0);
    }
}

TEST_CASE("non-learning variants keep multipliers fixed but count") {
    Rng rng(67);
    Genome g = genome_with_multipliers(Variant::EVO, 0.5, -0.5, 0.0, 0.0);
    MultiplierSet s;
    s.reset(Variant::EVO, g, 1.02, ValueScope::PerType);
    s.on_token_detected(0, g, rng);
    s.on_token_detected(1, g, rng);
    s.on_token_consumed(0, 625.0);
    s.on_token_consumed(1, -400.0);
    s.on_token_consumed(0, 625.0);
    REQUIRE(s.multiplier(0) == 0.5);
    REQUIRE(s.multiplier(1) == -0.5);
    REQUIRE(s.total_consumed() == 3);
    REQUIRE(s.entries()[0].consumed == 2);
    REQUIRE(s.entries()[1].consumed == 1);
}

// Brute-force oracle: replay a consumption script with the update rule
// written out longhand.
namespace {

struct OracleLearner {
    struct T {
        double m = 0.0;
        std::uint64_t c = 0;
        double last = 0.0;
        bool seen = false;
    };
    std::vector<T> types;
    std::uint64_t total = 0;
    double vmax = -1e300, vmin = 1e300;
    double lr, ls;
    bool learn;
    ValueScope scope;

    OracleLearner(std::size_t n, double lr_, double ls_, bool learn_, ValueScope sc)
        : types(n), lr(lr_), ls(ls_), learn(learn_), scope(sc) {}

    void detect(std::size_t t, double init) {
        if (!types[t].seen) {
            types[t].seen = true;
            types[t].m = init;
        }
    }

    void consume(std::size_t t, double v) {
        types[t].c += 1;
        types[t].last = v;
        total += 1;
        vmax = std::max(vmax, v);
        vmin = std::min(vmin, v);
        if (!learn) return;
        for (T& x : types) {
            if (!x.seen || x.c == 0) continue;
            const double vx = scope == ValueScope::PerType ? x.last : v;
            const double range = vmax - vmin;
            const double ratio = range > 0.0 ? vx / range : 0.0;
            const double share = static_cast<double>(x.c) / static_cast<double>(total);
            x.m = std::clamp(x.m + ls * (lr - share) * ratio, -1.0, 1.0);
        }
    }
};

}  // namespace

TEST_CASE("scripted sequences match the brute-force oracle") {
    for (const ValueScope scope : {ValueScope::PerType, ValueScope::Consumed}) {
        Rng rng(71);
        for (int trial = 0; trial < 100; ++trial) {
            const double lr = rng.uniform(1.0, 1.5);
            const double ls = rng.uniform() < 0.5 ? 1.0 : -1.0;
            Genome g = genome_with_multipliers(Variant::EVO_IL, rng.uniform(-1.0, 1.0),
                                               rng.uniform(-1.0, 1.0), lr,
                                               ls > 0 ? 0.5 : -0.5);
            MultiplierSet s;
            s.reset(Variant::EVO_IL, g, 1.02, scope);
            OracleLearner oracle(2, lr, ls, true, scope);

            for (int step = 0; step < 60; ++step) {
                const std::size_t t = rng.uniform_index(2);
                const double init = *g.multiplier_for(static_cast<int>(t));
                s.on_token_detected(static_cast<int>(t), g, rng);
                oracle.detect(t, init);
                if (rng.uniform() < 0.7) {
                    const double v = rng.uniform() < 0.5 ? -400.0 : rng.uniform(100.0, 1300.0);
                    s.on_token_consumed(static_cast<int>(t), v);
                    oracle.consume(t, v);
                }
                for (std::size_t k = 0; k < 2; ++k) {
                    if (!oracle.types[k].seen) continue;
                    REQUIRE_THAT(s.multiplier(static_cast<int>(k)),
                                 WithinAbs(oracle.types[k].m, 1e-12));
                }
            }
        }
    }
}

TEST_CASE("modulate_inputs builds the 16-entry controller vector") {
    Rng rng(73);
    Genome g = genome_with_multipliers(Variant::EVO, 0.6, -0.4, 0.0, 0.0);
    MultiplierSet s;
    s.reset(Variant::EVO, g, 1.02, ValueScope::PerType);
    s.on_token_detected(0, g, rng);
    s.on_token_detected(1, g, rng);

    SensorFrame frame{};
    frame[2] = {0.5, true, 0};    // token of type 0 at half range
    frame[5] = {0.25, true, 1};   // token of type 1
    frame[7] = {0.8, false, -1};  // wall or robot

    const auto in = modulate_inputs(frame, s);
    REQUIRE(in.size() == 16);
    REQUIRE(in[2] == 0.5);
    REQUIRE(in[5] == 0.25);
    REQUIRE(in[7] == 0.8);
    REQUIRE_THAT(in[8 + 2], WithinAbs(0.5 * 0.6, 1e-15));
    REQUIRE_THAT(in[8 + 5], WithinAbs(0.25 * -0.4, 1e-15));
    REQUIRE(in[8 + 7] == 0.0);
    REQUIRE(in[0] == 0.0);
    REQUIRE(in[8] == 0.0);
}
