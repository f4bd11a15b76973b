#pragma once

#include <cmath>
#include <numbers>

namespace ttspec {

// Section coordinates in the fixed basis order (phi, s, rho, u).
// All matrices and vectors in the library use this indexing.
enum Coord : int { PHI = 0, S = 1, RHO = 2, U = 3 };

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Wrap an angle to [0, 2*pi).
inline double wrap_angle(double phi) {
    double r = std::fmod(phi, two_pi);
    if (r < 0.0) r += two_pi;
    // fmod of a value just below 2*pi can round up to 2*pi
    if (r >= two_pi) r = 0.0;
    return r;
}

/// Shortest angular distance between two angles, in [0, pi].
inline double angular_distance(double a, double b) {
    double d = std::fabs(wrap_angle(a) - wrap_angle(b));
    return d > std::numbers::pi ? two_pi - d : d;
}

/// Signed angular difference a - b wrapped to (-pi, pi].
inline double angular_diff(double a, double b) {
    double d = std::remainder(a - b, two_pi);
    return d;
}

} // namespace ttspec
