#pragma once

#include "ttspec/mat4.hpp"

namespace ttspec {

/// Elementary symmetric functions e1..e4 of the eigenvalues through sums of
/// principal minors. Every elementary product pairs a lambda^n factor with a
/// lambda^-n factor for the transition matrices of this library, so the
/// evaluation stays well conditioned at any working precision; Newton
/// identities on power sums would cancel catastrophically instead.
/// Char poly: x^4 - e1 x^3 + e2 x^2 - e3 x + e4.
template <class T>
void sym_char_coeffs(const Mat4T<T>& m, T& e1, T& e2, T& e3, T& e4) {
    e1 = trace(m);

    e2 = T(0);
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) e2 += minor2(m, i, j, i, j);

    e3 = minor3(m, {0, 1, 2}, {0, 1, 2}) + minor3(m, {0, 1, 3}, {0, 1, 3}) +
         minor3(m, {0, 2, 3}, {0, 2, 3}) + minor3(m, {1, 2, 3}, {1, 2, 3});

    e4 = det4(m);
}

} // namespace ttspec
