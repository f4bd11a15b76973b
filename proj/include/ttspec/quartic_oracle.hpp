#pragma once

#include <array>

#include "ttspec/mat4.hpp"
#include "ttspec/spectrum.hpp"

namespace ttspec {

/// Roots of the monic quartic x^4 + c3 x^3 + c2 x^2 + c1 x + c0 by
/// Aberth-Ehrlich simultaneous iteration in compensated (double-double)
/// complex arithmetic, with starting radii from the Newton polygon of the
/// coefficients. No depression or resolvent is used: an origin shift by
/// c3/4 glues the reciprocal root cluster of a palindromic quartic with
/// |c3| ~ lambda^-n into a relatively degenerate one and loses the small
/// roots entirely. Working on the original polynomial keeps a double root
/// resolved to ~sqrt(arithmetic eps) at any coefficient scale, because the
/// local curvature grows with the same scale as the evaluation noise.
/// Independent of the S = x + 1/x reduction, so it can arbitrate it.
std::array<cplx, 4> quartic_roots_oracle(double c3, double c2, double c1, double c0);

/// Characteristic polynomial of m (compensated symmetric-function route)
/// solved with quartic_roots_oracle.
std::array<cplx, 4> oracle_charpoly_eigenvalues(const Mat4& m);

} // namespace ttspec
