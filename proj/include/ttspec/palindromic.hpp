#pragma once

#include <array>
#include <string>

#include "ttspec/mat4.hpp"
#include "ttspec/spectrum.hpp"
#include "ttspec/tolerances.hpp"

namespace ttspec {

/// x^4 + a x^3 + b x^2 + a x + 1. Palindromic by construction: only the two
/// free coefficients are stored.
struct PalindromicQuartic {
    double a = 0.0;
    double b = 0.0;
};

/// Relative gap between two coefficient pairs, scaled by the coefficient
/// vector magnitude (floor 1). Both computation routes carry rounding noise
/// proportional to that scale, so per-coefficient division by near-zero
/// values would be meaningless.
double coeff_relative_gap(const PalindromicQuartic& x, const PalindromicQuartic& y);

/// Full monic characteristic polynomial x^4 + c3 x^3 + c2 x^2 + c1 x + c0.
struct CharPoly {
    double c3 = 0.0, c2 = 0.0, c1 = 0.0, c0 = 0.0;
};

/// Characteristic polynomial through the elementary symmetric functions of
/// the eigenvalues: c3 = -tr(M), c2 = (tr(M)^2 - tr(M^2))/2 evaluated in
/// compensated arithmetic, c1 and c0 through principal minors and the
/// determinant. For the lambda^(+-n)-graded matrices of this library every
/// route here stays well conditioned up to the precision guard, unlike a
/// naive power-sum evaluation of c1, c0 in doubles.
CharPoly char_poly(const Mat4& m);

/// Trace oracle for the palindromic coefficients: A = -tr(M),
/// B = (tr(M)^2 - tr(M^2))/2. Asserts c1 == c3 and c0 == 1 within 1e-8
/// relative; failure means a non-symplectic input slipped through and
/// throws NotPalindromic.
PalindromicQuartic trace_coeffs(const Mat4& m, const Tolerances& tol = {});

enum class Classification {
    HyperbolicReal,
    HyperbolicComplex,
    NonHyperbolicElliptic,
    NonHyperbolicParabolic,
    Mixed,
};

std::string to_string(Classification c);

/// Roots of the S-reduction. s_roots[0] is the dominant root (the one
/// nearest to -a in magnitude, delivered directly by the Vieta split);
/// eigenvalues are ordered [big(S0), recip(S0), big(S1), recip(S1)] so each
/// adjacent pair multiplies to 1 by construction.
struct PalindromicRoots {
    std::array<cplx, 2> s_roots{};
    std::array<bool, 2> s_real{};
    std::array<cplx, 4> eigenvalues{};
};

/// Substitute S = x + 1/x, solve S^2 + a S + (b - 2) = 0, then
/// x^2 - S x + 1 = 0 per root. Both discriminants are formed in compensated
/// arithmetic so that a root pair sitting exactly on S = +-2 (the parabolic
/// boundary) is resolved exactly whenever the coefficients are exact.
PalindromicRoots solve_palindromic(const PalindromicQuartic& q);

double min_unit_circle_distance(const std::array<cplx, 4>& eigenvalues);

/// Spectrum classification against the unit circle:
///  - off the circle entirely: HyperbolicReal (both S real) or
///    HyperbolicComplex (conjugate S pair, loxodromic quadruple);
///  - an eigenvalue within tol_hyp of +-1: NonHyperbolicParabolic;
///  - a real S with |S| < 2 - tol_hyp (circle pair away from +-1):
///    NonHyperbolicElliptic;
///  - anything else near the circle: Mixed.
Classification classify(const PalindromicRoots& roots, double tol_hyp);

} // namespace ttspec
