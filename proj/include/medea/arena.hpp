#pragma once

#include <cstdint>

#include "medea/geometry.hpp"

namespace medea {

// Rectangular arena bounded by four solid walls. All entity positions are
// kept strictly inside [0,width) x [0,height).
struct Arena {
    double width = 1024.0;
    double height = 1024.0;

    bool contains(Vec2 p) const {
        return p.x > 0.0 && p.x < width && p.y > 0.0 && p.y < height;
    }
};

// Alternates the sign assignment of the two token classes. period == 0 means
// a static environment (season 0 forever).
struct SeasonSchedule {
    std::uint32_t period = 0;

    int season_at(std::uint64_t iteration) const {
        if (period == 0) return 0;
        return static_cast<int>((iteration / period) % 2);
    }

    // Index of the season interval (0,1,2,...), used for per-season metrics.
    std::uint64_t season_index_at(std::uint64_t iteration) const {
        if (period == 0) return 0;
        return iteration / period;
    }
};

// Token type whose value is positive in the given season; the other type
// carries the fixed negative value.
inline int positive_type_in_season(int season) { return season; }

inline double token_value(int type_id, int season, double positive_value,
                          double negative_value) {
    return type_id == positive_type_in_season(season) ? positive_value
                                                      : negative_value;
}

// Consumable energy disc. A token is active when respawn_remaining == 0;
// consuming it starts the respawn countdown.
struct Token {
    Vec2 pos;
    int type_id = 0;
    double value = 0.0;
    int respawn_remaining = 0;

    bool active() const { return respawn_remaining == 0; }
};

}  // namespace medea
