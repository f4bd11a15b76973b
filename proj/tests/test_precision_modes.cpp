#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ttspec/asymptotics.hpp"
#include "ttspec/errors.hpp"
#include "ttspec/precision.hpp"
#include "ttspec/transition.hpp"

using namespace ttspec;

TEST_CASE("mode guards") {
    CHECK(guard_max_n(0.5, PrecisionMode::Standard) == 46);
    CHECK(guard_max_n(0.5, PrecisionMode::Extended) == 162); // 168-bit significand - 6
    CHECK(guard_max_n(0.5, PrecisionMode::ExactRational) ==
          std::numeric_limits<int>::max());

    LinearModelParams p(0.0, 1.0, 0.5);
    HomoclinicMatrix h = special_case_matrix(1.0);
    RunConfig ext;
    ext.precision = PrecisionMode::Extended;
    CHECK_THROWS_AS(full_report(h, p, 47, RunConfig{}), ConditioningExceeded);
    CHECK_NOTHROW(full_report(h, p, 47, ext));
    CHECK_THROWS_AS(full_report(h, p, 163, ext), ConditioningExceeded);
}

TEST_CASE("extended coefficients unlock large n") {
    LinearModelParams p(0.0, 1.0, 0.5);
    HomoclinicMatrix h = special_case_matrix(1.0);
    double gap = -1.0;
    PalindromicQuartic q = coeffs_extended(h, p, 100, gap);
    CHECK(gap <= 1e-9);
    // A(100) = -(2^100 + 2^-100 + 100 + 2) for the shear model
    double want_a = -(std::exp2(100) + 102.0);
    CHECK(q.a == doctest::Approx(want_a).epsilon(1e-15));

    RunConfig ext;
    ext.precision = PrecisionMode::Extended;
    SpectrumReport r = full_report(h, p, 100, ext);
    CHECK(r.classification == Classification::HyperbolicReal);
    CHECK(r.oracle_residuals.dense_performed);
    CHECK(r.oracle_residuals.dense_chordal <= 1e-6);
}

TEST_CASE("exact mode: routes agree exactly and parabolic roots are exact") {
    LinearModelParams p(0.0, 1.0, 0.5);
    ExactCoeffs e = coeffs_exact(special_case_matrix(1.0), p, 2);
    CHECK(e.rounded().a == -8.25);
    CHECK(e.rounded().b == 19.0);

    // delta = 0 cell with a non-dyadic contraction rate: the double
    // eigenvalue at +1 is resolved exactly through the rational square root
    LinearModelParams p3(0.0, 1.0, 0.3);
    RunConfig exact;
    exact.precision = PrecisionMode::ExactRational;
    HomoclinicMatrix id = HomoclinicMatrix::checked(Mat4::identity());
    SpectrumReport r = full_report(id, p3, 7, exact);
    int exact_ones = 0;
    for (const cplx& z : r.eigenvalues)
        if (z == cplx(1.0, 0.0)) ++exact_ones;
    CHECK(exact_ones == 2);
    CHECK(r.classification == Classification::NonHyperbolicParabolic);
}

TEST_CASE("exact mode has no guard") {
    LinearModelParams p(0.0, 1.0, 0.5);
    RunConfig exact;
    exact.precision = PrecisionMode::ExactRational;
    SpectrumReport r = full_report(special_case_matrix(1.0), p, 200, exact);
    CHECK(r.classification == Classification::HyperbolicReal);
    CHECK(r.a_n == doctest::Approx(-std::exp2(200)).epsilon(1e-12));
}

TEST_CASE("solve_palindromic_exact falls back cleanly on irrational branches") {
    // S roots 4 and 4.25: inner discriminants 12 and 14.0625; the first is
    // irrational, the second is a rational square
    ExactCoeffs e;
    e.a = -boost::multiprecision::cpp_rational(33, 4);
    e.b = 19;
    PalindromicRoots r = solve_palindromic_exact(e);
    CHECK(r.s_roots[0].real() == 4.25);
    CHECK(r.s_roots[1].real() == 4.0);
    CHECK(r.eigenvalues[0].real() == 4.0);   // exact via rational sqrt
    CHECK(r.eigenvalues[1].real() == 0.25);
    CHECK(r.eigenvalues[2].real() ==
          doctest::Approx(2.0 + std::sqrt(3.0)).epsilon(1e-15));
}

TEST_CASE("precision mode names round-trip") {
    for (PrecisionMode m : {PrecisionMode::Standard, PrecisionMode::Extended,
                            PrecisionMode::ExactRational})
        CHECK(precision_mode_from_string(to_string(m)) == m);
    CHECK_FALSE(precision_mode_from_string("float16").has_value());
}
