#include <catch2/catch_amalgamated.hpp>

#include "medea/geometry.hpp"

using Catch::Matchers::WithinAbs;
using namespace medea;

TEST_CASE("Vec2 arithmetic") {
    const Vec2 a{3.0, 4.0};
    const Vec2 b{-1.0, 2.0};
    REQUIRE((a + b).x == 2.0);
    REQUIRE((a + b).y == 6.0);
    REQUIRE((a - b).x == 4.0);
    REQUIRE((a - b).y == 2.0);
    REQUIRE((a * 2.0).x == 6.0);
    REQUIRE(a.dot(b) == 5.0);
    REQUIRE(a.norm2() == 25.0);
    REQUIRE(a.norm() == 5.0);
    REQUIRE(distance(a, b) == Catch::Approx(std::sqrt(16.0 + 4.0)));

    Vec2 c = a;
    c += b;
    REQUIRE(c.x == 2.0);
    REQUIRE(c.y == 6.0);
}

TEST_CASE("unit_from_angle") {
    REQUIRE_THAT(unit_from_angle(0.0).x, WithinAbs(1.0, 1e-15));
    REQUIRE_THAT(unit_from_angle(0.0).y, WithinAbs(0.0, 1e-15));
    const double pi = 3.14159265358979323846;
    REQUIRE_THAT(unit_from_angle(pi / 2).x, WithinAbs(0.0, 1e-15));
    REQUIRE_THAT(unit_from_angle(pi / 2).y, WithinAbs(1.0, 1e-15));
}

TEST_CASE("wrap_angle maps into (-pi, pi]") {
    const double pi = 3.14159265358979323846;
    REQUIRE_THAT(wrap_angle(0.0), WithinAbs(0.0, 1e-15));
    REQUIRE_THAT(wrap_angle(3 * pi), WithinAbs(pi, 1e-12));
    REQUIRE_THAT(wrap_angle(-3 * pi), WithinAbs(pi, 1e-12));
    REQUIRE_THAT(wrap_angle(2 * pi + 0.25), WithinAbs(0.25, 1e-12));
    REQUIRE_THAT(wrap_angle(-2 * pi - 0.25), WithinAbs(-0.25, 1e-12));
    for (double x = -20.0; x <= 20.0; x += 0.377) {
        const double w = wrap_angle(x);
        REQUIRE(w > -pi - 1e-12);
        REQUIRE(w <= pi + 1e-12);
        // Same direction modulo 2*pi.
        REQUIRE_THAT(std::sin(w), WithinAbs(std::sin(x), 1e-9));
        REQUIRE_THAT(std::cos(w), WithinAbs(std::cos(x), 1e-9));
    }
}

TEST_CASE("clamp") {
    REQUIRE(clamp(5.0, 0.0, 1.0) == 1.0);
    REQUIRE(clamp(-5.0, 0.0, 1.0) == 0.0);
    REQUIRE(clamp(0.5, 0.0, 1.0) == 0.5);
}
