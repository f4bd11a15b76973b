#pragma once

#include <array>
#include <cmath>
#include <initializer_list>

#include "ttspec/coords.hpp"

namespace ttspec {

/// Dense 4x4 matrix over an arbitrary scalar, row-major, indexed in the
/// basis order (phi, s, rho, u). The double instantiation is the workhorse;
/// multiprecision scalars reuse the same arithmetic.
template <class T>
struct Mat4T {
    std::array<std::array<T, 4>, 4> m{};

    Mat4T() = default;

    Mat4T(std::initializer_list<T> rowmajor) {
        int k = 0;
        for (const T& v : rowmajor) {
            m[k / 4][k % 4] = v;
            ++k;
            if (k == 16) break;
        }
    }

    T& operator()(int i, int j) { return m[i][j]; }
    const T& operator()(int i, int j) const { return m[i][j]; }

    static Mat4T identity() {
        Mat4T r;
        for (int i = 0; i < 4; ++i) r(i, i) = T(1);
        return r;
    }

    static Mat4T zero() { return Mat4T{}; }

    friend bool operator==(const Mat4T& a, const Mat4T& b) { return a.m == b.m; }
};

using Mat4 = Mat4T<double>;

template <class T>
Mat4T<T> mat_mul(const Mat4T<T>& a, const Mat4T<T>& b) {
    Mat4T<T> r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            T acc = a(i, 0) * b(0, j);
            for (int k = 1; k < 4; ++k) acc += a(i, k) * b(k, j);
            r(i, j) = acc;
        }
    return r;
}

template <class T>
Mat4T<T> transpose(const Mat4T<T>& a) {
    Mat4T<T> r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r(i, j) = a(j, i);
    return r;
}

template <class T>
Mat4T<T> negate(const Mat4T<T>& a) {
    Mat4T<T> r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r(i, j) = -a(i, j);
    return r;
}

template <class T>
std::array<T, 4> mat_vec(const Mat4T<T>& a, const std::array<T, 4>& x) {
    std::array<T, 4> r{};
    for (int i = 0; i < 4; ++i) {
        T acc = a(i, 0) * x[0];
        for (int k = 1; k < 4; ++k) acc += a(i, k) * x[k];
        r[i] = acc;
    }
    return r;
}

template <class T>
T trace(const Mat4T<T>& a) {
    return a(0, 0) + a(1, 1) + a(2, 2) + a(3, 3);
}

inline double norm_inf(const Mat4& a) {
    double mx = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) mx = std::max(mx, std::fabs(a(i, j)));
    return mx;
}

inline double max_abs_diff(const Mat4& a, const Mat4& b) {
    double mx = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) mx = std::max(mx, std::fabs(a(i, j) - b(i, j)));
    return mx;
}

inline bool all_finite(const Mat4& a) {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (!std::isfinite(a(i, j))) return false;
    return true;
}

/// 2x2 determinant of the submatrix on rows {r0,r1} x cols {c0,c1}.
template <class T>
T minor2(const Mat4T<T>& a, int r0, int r1, int c0, int c1) {
    return a(r0, c0) * a(r1, c1) - a(r0, c1) * a(r1, c0);
}

/// 3x3 determinant of the submatrix on rows {r} x cols {c}.
template <class T>
T minor3(const Mat4T<T>& a, const std::array<int, 3>& r, const std::array<int, 3>& c) {
    return a(r[0], c[0]) * (a(r[1], c[1]) * a(r[2], c[2]) - a(r[1], c[2]) * a(r[2], c[1])) -
           a(r[0], c[1]) * (a(r[1], c[0]) * a(r[2], c[2]) - a(r[1], c[2]) * a(r[2], c[0])) +
           a(r[0], c[2]) * (a(r[1], c[0]) * a(r[2], c[1]) - a(r[1], c[1]) * a(r[2], c[0]));
}

/// Determinant by cofactor expansion along the first row. For the matrices
/// this library produces (one lambda^n column paired against one lambda^-n
/// column) every elementary product stays O(n), so the expansion is
/// well conditioned even near the precision guard.
template <class T>
T det4(const Mat4T<T>& a) {
    T d = a(0, 0) * minor3(a, {1, 2, 3}, {1, 2, 3});
    d -= a(0, 1) * minor3(a, {1, 2, 3}, {0, 2, 3});
    d += a(0, 2) * minor3(a, {1, 2, 3}, {0, 1, 3});
    d -= a(0, 3) * minor3(a, {1, 2, 3}, {0, 1, 2});
    return d;
}

} // namespace ttspec
