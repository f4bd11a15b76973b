#pragma once

#include <array>
#include <complex>

#include "ttspec/mat4.hpp"

namespace ttspec {

using cplx = std::complex<double>;

/// Eigenvalues of a 4x4 matrix with their distances to the unit circle.
struct Spectrum {
    std::array<cplx, 4> eigenvalues{};
    std::array<double, 4> unit_circle_distances{};

    double min_unit_circle_distance() const {
        double m = unit_circle_distances[0];
        for (int i = 1; i < 4; ++i) m = std::min(m, unit_circle_distances[i]);
        return m;
    }
};

/// General-purpose dense eigenvalue oracle (QR iteration via Eigen),
/// independent of the palindromic pipeline. Throws NonFinite on bad input.
Spectrum dense_eigenvalues(const Mat4& m);

/// Chordal (Riemann-sphere) distance, 2|z-w| / sqrt((1+|z|^2)(1+|w|^2)).
/// Behaves like a relative error for large moduli and an absolute one near
/// the origin, which is what eigenvalue comparisons across reciprocal pairs
/// need.
double chordal_distance(const cplx& z, const cplx& w);

/// Greedy nearest-match pairing of two 4-element eigenvalue multisets in the
/// chordal metric; returns the largest matched distance.
double greedy_chordal_match(const std::array<cplx, 4>& a, const std::array<cplx, 4>& b);

} // namespace ttspec
