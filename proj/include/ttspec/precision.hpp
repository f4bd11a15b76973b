#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "ttspec/homoclinic.hpp"
#include "ttspec/linear_model.hpp"
#include "ttspec/palindromic.hpp"

namespace ttspec {

/// Extended mode: closed-form and minor-route coefficients evaluated in
/// 50-digit floats, cross-checked, downcast. rel_gap reports the observed
/// route disagreement (in extended precision).
PalindromicQuartic coeffs_extended(const HomoclinicMatrix& h, const LinearModelParams& p,
                                   int n, double& rel_gap);

/// Exact-rational coefficients. Doubles convert to rationals exactly, so the
/// mode applies to any representable input.
struct ExactCoeffs {
    boost::multiprecision::cpp_rational a;
    boost::multiprecision::cpp_rational b;

    PalindromicQuartic rounded() const;
};

/// Both routes evaluated in rational arithmetic; they are algebraically
/// identical, so any disagreement is an implementation fault and throws
/// OracleMismatch.
ExactCoeffs coeffs_exact(const HomoclinicMatrix& h, const LinearModelParams& p, int n);

/// S-reduction on exact coefficients. Rational discriminants that are
/// perfect squares are resolved exactly, so an S-root sitting on the
/// parabolic boundary +-2 produces the eigenvalue +-1 with zero error;
/// irrational branches fall back to the compensated double path.
PalindromicRoots solve_palindromic_exact(const ExactCoeffs& q);

/// Exact-arithmetic arbitration of the shear-model factorization: the
/// product of x^2-(delta n nu + 2)x+1 and x^2-(lambda^n+lambda^-n)x+1
/// matches the characteristic polynomial exactly; swapping the radial
/// coefficient for the variant lambda^(2n)+lambda^-n never does (their
/// difference lambda^n(lambda^n - 1) is nonzero for every n >= 1). In
/// doubles that divergence falls below any fixed threshold once lambda^n
/// reaches rounding scale, so the rejection is recorded exactly.
struct SpecialCaseExactCheck {
    bool correct_matches = false;
    bool variant_matches = true;
};

SpecialCaseExactCheck special_case_exact_check(double delta, const LinearModelParams& p,
                                               int n);

/// Cheap exact test that the variant radial coefficient differs from the
/// correct one: lambda^n (lambda^n - 1) != 0 in rational arithmetic.
bool special_case_variant_differs_exactly(double lambda, int n);

} // namespace ttspec
