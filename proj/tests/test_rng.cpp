#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "medea/rng.hpp"

using namespace medea;

TEST_CASE("same seed, same stream") {
    Rng a(12345), b(12345);
    for (int i = 0; i < 1000; ++i) REQUIRE(a.next() == b.next());
}

TEST_CASE("different seeds diverge") {
    Rng a(1), b(2);
    int same = 0;
    for (int i = 0; i < 100; ++i)
        if (a.next() == b.next()) ++same;
    REQUIRE(same == 0);
}

TEST_CASE("uniform in [0,1) and uniform(lo,hi) in range") {
    Rng rng(7);
    double mn = 1.0, mx = 0.0, sum = 0.0;
    for (int i = 0; i < 20000; ++i) {
        const double u = rng.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        mn = std::min(mn, u);
        mx = std::max(mx, u);
        sum += u;
    }
    REQUIRE(mn < 0.01);
    REQUIRE(mx > 0.99);
    REQUIRE(sum / 20000 == Catch::Approx(0.5).margin(0.01));

    for (int i = 0; i < 1000; ++i) {
        const double v = rng.uniform(-3.0, 5.0);
        REQUIRE(v >= -3.0);
        REQUIRE(v < 5.0);
    }
}

TEST_CASE("uniform_index stays in bounds and covers") {
    Rng rng(11);
    std::array<int, 7> hits{};
    for (int i = 0; i < 7000; ++i) {
        const std::size_t k = rng.uniform_index(7);
        REQUIRE(k < 7);
        hits[k] += 1;
    }
    for (int h : hits) REQUIRE(h > 700);  // ~1000 expected
}

TEST_CASE("normal consumes exactly two engine draws") {
    Rng a(99), b(99);
    (void)a.normal();
    (void)b.next();
    (void)b.next();
    // Streams must be aligned again.
    REQUIRE(a.next() == b.next());
}

TEST_CASE("normal moments") {
    Rng rng(5);
    const int n = 200000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.normal(2.0, 3.0);
        sum += x;
        sq += x * x;
    }
    const double mean = sum / n;
    const double var = sq / n - mean * mean;
    REQUIRE(mean == Catch::Approx(2.0).margin(0.03));
    REQUIRE(std::sqrt(var) == Catch::Approx(3.0).margin(0.03));
}
