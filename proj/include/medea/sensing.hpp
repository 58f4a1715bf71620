#pragma once

#include <array>

namespace medea {

inline constexpr int kRayCount = 8;
inline constexpr double kDefaultSensorRange = 196.0;

// Default body-relative ray angles (degrees). Deliberately uneven and
// front-biased; a token can slip between rays and be consumed undetected.
inline constexpr std::array<double, kRayCount> kDefaultRayAnglesDeg = {
    -90.0, -45.0, -20.0, -5.0, 5.0, 20.0, 45.0, 90.0};

// One ray reading. proximity is 1 - d/range for the nearest hit within
// range, 0 otherwise. token_type is meaningful only when is_token is true;
// it feeds the learning mechanism and never enters the controller input.
struct RayHit {
    double proximity = 0.0;
    bool is_token = false;
    int token_type = -1;
};

using SensorFrame = std::array<RayHit, kRayCount>;

}  // namespace medea
