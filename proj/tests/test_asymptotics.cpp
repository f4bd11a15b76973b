#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ttspec/asymptotics.hpp"
#include "ttspec/ensemble.hpp"
#include "ttspec/errors.hpp"
#include "ttspec/precision.hpp"
#include "ttspec/symplectic.hpp"

using namespace ttspec;

TEST_CASE("shear-model matrix") {
    CHECK(max_abs_diff(special_case_matrix(0.0).pi(), Mat4::identity()) == 0.0);
    CHECK(symplectic_residual(special_case_matrix(7.5).pi()) == 0.0); // exactly symplectic

    TransversalityReport r = transversality_report(special_case_matrix(1.0));
    CHECK(r.delta == 1.0);
    CHECK(r.d22 == 1.0);
    CHECK(r.strongly_transverse);
    CHECK(transversality_delta(special_case_matrix(-3.0)) == -3.0);
}

TEST_CASE("shear-model factorization") {
    LinearModelParams p(0.0, 1.0, 0.5);
    SpecialCaseFactors f = special_case_factor({1.0, p, 2});
    CHECK(f.s_torsion == 4.0);  // delta*n*nu + 2
    CHECK(f.s_radial == 4.25);  // lambda^2 + lambda^-2
    CHECK(f.expanded.a == -8.25);
    CHECK(f.expanded.b == 19.0);

    // delta = 0: first factor (x-1)^2, never hyperbolic
    SpecialCaseFactors f0 = special_case_factor({0.0, p, 6});
    CHECK(f0.s_torsion == 2.0);
    for (int n : {1, 3, 10, 25})
        CHECK_FALSE(special_case_hyperbolicity({0.0, p, n}));

    // nu = 0: same collapse
    LinearModelParams p0(0.0, 0.0, 0.5);
    CHECK(special_case_factor({1.0, p0, 4}).s_torsion == 2.0);
    for (int n : {1, 3, 10, 25})
        CHECK_FALSE(special_case_hyperbolicity({1.0, p0, n}));
}

TEST_CASE("shear-model hyperbolicity condition") {
    LinearModelParams p(0.0, 1.0, 0.5);
    for (int n = 1; n <= 40; ++n) CHECK(special_case_hyperbolicity({1.0, p, n}));

    // delta*nu < 0: S1 = 2 - n crosses the elliptic and parabolic bands
    LinearModelParams pm(0.0, -1.0, 0.5);
    CHECK_FALSE(special_case_hyperbolicity({1.0, pm, 2})); // S1 = 0: eigenvalues +-i
    CHECK_FALSE(special_case_hyperbolicity({1.0, pm, 3}));
    CHECK_FALSE(special_case_hyperbolicity({1.0, pm, 4})); // S1 = -2: parabolic at -1
    for (int n = 5; n <= 40; ++n) CHECK(special_case_hyperbolicity({1.0, pm, n}));
}

TEST_CASE("factor product matches the trace oracle, variant exponent does not") {
    LinearModelParams p(0.0, 1.0, 0.5);
    CHECK_NOTHROW(special_case_factor({-3.0, p, 11}));
    CHECK(special_case_variant_exponent_gap({1.0, p, 2}) > 1e-9);

    SpecialCaseExactCheck ex = special_case_exact_check(1.0, p, 9);
    CHECK(ex.correct_matches);
    CHECK_FALSE(ex.variant_matches);
    CHECK(special_case_variant_differs_exactly(0.5, 40));
    CHECK(special_case_variant_differs_exactly(0.3, 26));
}

TEST_CASE("closed-form S-roots of the shear model are recovered exactly") {
    // S-roots are exactly {delta n nu + 2, lambda^n + lambda^-n}
    LinearModelParams p(0.0, 1.0, 0.5);
    for (int n : {1, 2, 5, 12, 20, 33, 46}) {
        SpectrumReport r = full_report(special_case_matrix(1.0), p, n);
        double s_torsion = 1.0 * n + 2.0;
        double s_radial = std::exp2(-n) + std::exp2(n);
        double hi = std::max(s_torsion, s_radial), lo = std::min(s_torsion, s_radial);
        CHECK(std::fabs(r.s_roots[0].real() - hi) <= 1e-10 * hi);
        CHECK(std::fabs(r.s_roots[1].real() - lo) <= 1e-10 * lo);
    }
}

TEST_CASE("asymptotics table on the shear model") {
    LinearModelParams p(0.0, 1.0, 0.5);
    HomoclinicMatrix h = special_case_matrix(1.0);
    AsymptoticsTable t = asymptotic_table(h, p, {2, 20, 40});
    CHECK(t.delta == 1.0);
    CHECK(t.d22 == 1.0);

    // n=2: dominant pair is exactly {4, 1/4}: x2 = 4 = d22 lambda^-2
    CHECK(t.rows[0].x2 == 4.0);
    CHECK(t.rows[0].x2_model == 4.0);
    CHECK(t.rows[0].ratio2 == 1.0);

    // n=20: S1 = 22, x1 = 11 + sqrt(120), model = 20
    CHECK(t.rows[1].x1 == doctest::Approx(11.0 + std::sqrt(120.0)).epsilon(1e-14));
    CHECK(t.rows[1].ratio1 == doctest::Approx((11.0 + std::sqrt(120.0)) / 20.0).epsilon(1e-14));
    CHECK(t.rows[1].ratio1 > 1.0);

    // ratio1 decreases toward 1
    CHECK(std::fabs(t.rows[2].ratio1 - 1.0) < std::fabs(t.rows[1].ratio1 - 1.0));

    // the radial law is exact for this family at every n
    for (const AsymptoticsRow& row : t.rows)
        CHECK(std::fabs(row.ratio2 - 1.0) <= 1e-12);
}

TEST_CASE("asymptotics gates") {
    LinearModelParams p0(0.0, 0.0, 0.5);
    CHECK_THROWS_AS(asymptotic_table(special_case_matrix(1.0), p0, {5}), NotWithTorsion);

    LinearModelParams p(0.0, 1.0, 0.5);
    HomoclinicMatrix id = HomoclinicMatrix::checked(Mat4::identity());
    CHECK_THROWS_AS(asymptotic_table(id, p, {5}), NotStronglyTransverse);

    HomoclinicMatrix w = d22_zero_ensemble(23, 1).front();
    CHECK_THROWS_AS(asymptotic_table(w, p, {30}), NotStronglyTransverse);

    // elliptic n for the sign-flipped shear model: requested spectrum not real
    LinearModelParams pm(0.0, -1.0, 0.5);
    CHECK_THROWS_AS(asymptotic_table(special_case_matrix(1.0), pm, {2}), NotYetHyperbolic);
}

TEST_CASE("reciprocal pairs in the table rows") {
    LinearModelParams p(0.0, 1.0, 0.5);
    for (int n : {6, 18, 30}) {
        SpectrumReport r = full_report(special_case_matrix(2.0), p, n);
        CHECK(std::abs(r.eigenvalues[0] * r.eigenvalues[1] - 1.0) <= 1e-13);
        CHECK(std::abs(r.eigenvalues[2] * r.eigenvalues[3] - 1.0) <= 1e-13);
    }
}
