#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ttspec/asymptotics.hpp"
#include "ttspec/ensemble.hpp"
#include "ttspec/errors.hpp"
#include "ttspec/quartic_oracle.hpp"
#include "ttspec/symplectic.hpp"
#include "ttspec/transition.hpp"

using namespace ttspec;

namespace {

bool set_close(const std::array<cplx, 4>& got, const std::array<cplx, 4>& want, double tol) {
    return greedy_chordal_match(got, want) <= tol;
}

} // namespace

TEST_CASE("transition matrix") {
    LinearModelParams p(0.0, 1.0, 0.5);
    HomoclinicMatrix id = HomoclinicMatrix::checked(Mat4::identity());
    CHECK(max_abs_diff(transition_matrix(id, p, 7), d_f_l_pow(p, 7)) == 0.0);

    Mat4 m2 = transition_matrix(special_case_matrix(1.0), p, 2);
    Mat4 want = {1.0, 0.0, 2.0, 0.0, 0.0, 0.25, 0.0, 0.0,
                 1.0, 0.0, 3.0, 0.0, 0.0, 0.0,  0.0, 4.0};
    CHECK(max_abs_diff(m2, want) == 0.0);

    // product of symplectic matrices stays symplectic at moderate n
    auto ensemble = symplectic_ensemble(71, 30);
    for (const Mat4& pi : ensemble) {
        HomoclinicMatrix h = HomoclinicMatrix::checked(pi);
        CHECK(is_symplectic(transition_matrix(h, p, 12), 1e-8));
    }
}

TEST_CASE("closed-form coefficients at pinned points") {
    HomoclinicMatrix id = HomoclinicMatrix::checked(Mat4::identity());
    {
        LinearModelParams p(0.0, 2.7, 0.5); // nu arbitrary: Delta = 0, c11 = 0
        PalindromicQuartic q = closed_form_coeffs(id, p, 2);
        CHECK(q.a == -6.25); // -(0.25 + 4 + 2)
        CHECK(q.b == 10.5);  // 2*0.25 + 2*4 + 2
    }
    {
        LinearModelParams p(0.0, 1.0, 0.5);
        PalindromicQuartic q = closed_form_coeffs(special_case_matrix(1.0), p, 2);
        CHECK(q.a == -8.25);
        CHECK(q.b == 19.0);
    }
    {
        LinearModelParams p(0.0, 0.0, 0.5);
        PalindromicQuartic q = closed_form_coeffs(id, p, 1);
        CHECK(q.a == -4.5); // spectrum {1, 1, 0.5, 2}
        CHECK(q.b == 7.0);
    }
}

TEST_CASE("trace-route coefficients") {
    Mat4 diag = Mat4::identity();
    diag(S, S) = 0.25;
    diag(U, U) = 4.0;
    PalindromicQuartic q = trace_coeffs(diag);
    CHECK(q.a == -6.25);
    CHECK(q.b == 10.5);

    PalindromicQuartic qi = trace_coeffs(Mat4::identity()); // (x-1)^4
    CHECK(qi.a == -4.0);
    CHECK(qi.b == 6.0);

    Mat4 m2 = {1.0, 0.0, 2.0, 0.0, 0.0, 0.25, 0.0, 0.0,
               1.0, 0.0, 3.0, 0.0, 0.0, 0.0,  0.0, 4.0};
    PalindromicQuartic q2 = trace_coeffs(m2);
    CHECK(q2.a == -8.25);
    CHECK(q2.b == 19.0);

    Mat4 nonsymp;
    nonsymp(PHI, PHI) = 2.0;
    nonsymp(S, S) = 3.0;
    nonsymp(RHO, RHO) = 4.0;
    nonsymp(U, U) = 5.0;
    CHECK_THROWS_AS(trace_coeffs(nonsymp), NotPalindromic);
}

TEST_CASE("palindromic solve via S-reduction") {
    {
        auto r = solve_palindromic({-6.25, 10.5});
        // S^2 - 6.25 S + 8.5 = (S - 2)(S - 4.25); dominant root first
        CHECK(r.s_roots[0].real() == 4.25);
        CHECK(r.s_roots[1].real() == 2.0);
        CHECK(set_close(r.eigenvalues, {cplx(1), cplx(1), cplx(0.25), cplx(4)}, 1e-12));
    }
    {
        auto r = solve_palindromic({-8.25, 19.0});
        CHECK(r.s_roots[0].real() == 4.25);
        CHECK(r.s_roots[1].real() == 4.0);
        const double r3 = std::sqrt(3.0);
        CHECK(set_close(r.eigenvalues, {cplx(4), cplx(0.25), cplx(2 + r3), cplx(2 - r3)},
                        1e-12));
    }
    {
        auto r = solve_palindromic({0.0, 2.0}); // x^4 + 2x^2 + 1 = (x^2+1)^2
        CHECK(r.s_roots[0] == cplx(0.0));
        CHECK(r.s_roots[1] == cplx(0.0));
        CHECK(set_close(r.eigenvalues, {cplx(0, 1), cplx(0, -1), cplx(0, 1), cplx(0, -1)},
                        1e-12));
    }
}

TEST_CASE("classification bands") {
    Tolerances tol;
    CHECK(classify(solve_palindromic({-6.25, 10.5}), tol.tol_hyp) ==
          Classification::NonHyperbolicParabolic); // eigenvalue 1 on the circle
    CHECK(classify(solve_palindromic({-8.25, 19.0}), tol.tol_hyp) ==
          Classification::HyperbolicReal);
    CHECK(classify(solve_palindromic({0.0, 2.0}), tol.tol_hyp) ==
          Classification::NonHyperbolicElliptic);

    // loxodromic quadruple: S complex pair, eigenvalues off the circle
    // (x^2 - Sx + 1)(x^2 - conj(S)x + 1) with S = 3 + 4i
    cplx s(3.0, 4.0);
    PalindromicQuartic q{-2.0 * s.real(), 2.0 + std::norm(s)};
    CHECK(classify(solve_palindromic(q), tol.tol_hyp) == Classification::HyperbolicComplex);
}

TEST_CASE("eigenvalues come in reciprocal pairs by construction") {
    auto ensemble = symplectic_ensemble(73, 50);
    LinearModelParams p(0.0, 1.0, 0.5);
    for (const Mat4& pi : ensemble) {
        HomoclinicMatrix h = HomoclinicMatrix::checked(pi);
        for (int n : {1, 5, 17, 33, 46}) {
            auto r = solve_palindromic(closed_form_coeffs(h, p, n));
            CHECK(std::abs(r.eigenvalues[0] * r.eigenvalues[1] - 1.0) <= 1e-13);
            CHECK(std::abs(r.eigenvalues[2] * r.eigenvalues[3] - 1.0) <= 1e-13);
        }
    }
}

TEST_CASE("full report") {
    RunConfig cfg;
    HomoclinicMatrix id = HomoclinicMatrix::checked(Mat4::identity());
    LinearModelParams p(0.0, 1.0, 0.5);

    SpectrumReport r1 = full_report(id, p, 5);
    CHECK(r1.classification == Classification::NonHyperbolicParabolic); // Delta = 0

    SpectrumReport r2 = full_report(special_case_matrix(1.0), p, 2);
    CHECK(r2.classification == Classification::HyperbolicReal);
    CHECK(r2.min_unit_circle_distance ==
          doctest::Approx(std::sqrt(3.0) - 1.0).epsilon(1e-12)); // |(2-sqrt3) - 1|
    CHECK(r2.oracle_residuals.coeff_rel <= 1e-9);
    CHECK(r2.oracle_residuals.dense_performed);
    CHECK(r2.oracle_residuals.dense_chordal <= 1e-6);

    // Theorem 3 converse: delta = 0 keeps an eigenvalue at 1 for every n
    for (int n = 1; n <= guard_max_n(0.5); ++n) {
        SpectrumReport r = full_report(id, p, n);
        CHECK(r.classification == Classification::NonHyperbolicParabolic);
    }

    CHECK(empirical_hyperbolic_onset(special_case_matrix(1.0), p, 40,
                                     Classification::HyperbolicReal) == 1);
    CHECK(empirical_hyperbolic_onset(id, p, 40, Classification::HyperbolicReal) == 0);
}

TEST_CASE("bypassed non-symplectic input falls back to the dense route") {
    Mat4 bad = Mat4::identity();
    bad(PHI, PHI) = 2.0;
    bad(S, S) = 3.0;
    HomoclinicMatrix h = HomoclinicMatrix::unchecked(bad);
    LinearModelParams p(0.0, 1.0, 0.5);
    SpectrumReport r = full_report(h, p, 2);
    CHECK(r.oracle_residuals.notes.find("skipped") != std::string::npos);
    // spectrum of diag(2,3,1,1) * Df^2-ish is off the palindromic structure;
    // the report still classifies from dense eigenvalues
    CHECK_FALSE(r.oracle_residuals.dense_performed);
}

TEST_CASE("quartic oracle handles scale-degenerate clusters") {
    // double root at 1 glued to a 1e14-scale coefficient set: the dyadic
    // values satisfy P(1) = 0 exactly
    double s2 = 93942637394902.84375;
    auto roots = quartic_roots_oracle(-(s2 + 2.0), 2.0 + 2.0 * s2, -(s2 + 2.0), 1.0);
    int near_one = 0;
    for (const cplx& z : roots)
        if (std::abs(z - 1.0) <= 1e-10) ++near_one;
    CHECK(near_one == 2);

    auto roots2 = quartic_roots_oracle(-14.0625, -30.125, -14.0625, 1.0);
    CHECK(set_close(roots2, {cplx(16), cplx(0.0625), cplx(-1), cplx(-1)}, 1e-10));
}
