#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ttspec/asymptotics.hpp"
#include "ttspec/ensemble.hpp"
#include "ttspec/errors.hpp"
#include "ttspec/homoclinic.hpp"
#include "ttspec/symplectic.hpp"

using namespace ttspec;

TEST_CASE("transversality determinant") {
    HomoclinicMatrix id = HomoclinicMatrix::checked(Mat4::identity());
    CHECK(transversality_delta(id) == 0.0); // det [[0,0],[0,1]]

    CHECK(transversality_delta(special_case_matrix(1.0)) == 1.0);
    CHECK(transversality_delta(special_case_matrix(-3.0)) == -3.0);
}

TEST_CASE("rank oracle") {
    HomoclinicMatrix id = HomoclinicMatrix::checked(Mat4::identity());
    CHECK_FALSE(is_transverse_rank_oracle(id)); // Pi e_u = e_u adds no rho direction

    CHECK(is_transverse_rank_oracle(special_case_matrix(1.0)));

    // rank oracle agrees with the determinant criterion away from the
    // threshold band
    auto ensemble = symplectic_ensemble(17, 300);
    Tolerances tol;
    for (const Mat4& m : ensemble) {
        HomoclinicMatrix h = HomoclinicMatrix::checked(m);
        double delta = transversality_delta(h);
        if (std::fabs(delta) > 1e-7 || std::fabs(delta) < 1e-11)
            CHECK(is_transverse_rank_oracle(h) == (std::fabs(delta) > tol.tol_rank));
    }
}

TEST_CASE("transversality report") {
    TransversalityReport rid = transversality_report(HomoclinicMatrix::checked(Mat4::identity()));
    CHECK(rid.delta == 0.0);
    CHECK_FALSE(rid.transverse);
    CHECK_FALSE(rid.strongly_transverse);
    CHECK(rid.d22 == 1.0);

    TransversalityReport rsc = transversality_report(special_case_matrix(1.0));
    CHECK(rsc.delta == 1.0);
    CHECK(rsc.transverse);
    CHECK(rsc.strongly_transverse);
    CHECK(rsc.d22 == 1.0);

    // d22 = 0 witness: transverse but not strongly
    HomoclinicMatrix w = d22_zero_ensemble(23, 1).front();
    CHECK(w.d(2, 2) == 0.0);
    TransversalityReport rw = transversality_report(w);
    CHECK(rw.transverse);
    CHECK_FALSE(rw.strongly_transverse);
}

TEST_CASE("fenichel leaf test") {
    CHECK(fenichel_leaf_test(HomoclinicMatrix::checked(Mat4::identity())));
    for (double d : {-3.0, -0.5, 0.0, 2.0})
        CHECK(fenichel_leaf_test(special_case_matrix(d))); // D = I for the shear model
    CHECK_FALSE(fenichel_leaf_test(d22_zero_ensemble(23, 1).front()));
}

TEST_CASE("construction validates symplecticity, bypass skips it") {
    Mat4 bad = Mat4::identity();
    bad(PHI, PHI) = 2.0;
    CHECK_THROWS_AS(HomoclinicMatrix::checked(bad), NonSymplectic);
    HomoclinicMatrix h = HomoclinicMatrix::unchecked(bad);
    CHECK_FALSE(h.validated_symplectic());

    Mat4 nan = Mat4::identity();
    nan(S, U) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(HomoclinicMatrix::unchecked(nan), NonFinite);
}

TEST_CASE("block accessors read the stored entries") {
    std::mt19937_64 rng(31);
    Mat4 m = random_symplectic(rng);
    HomoclinicMatrix h = HomoclinicMatrix::checked(m);
    CHECK(h.a(1, 1) == m(PHI, PHI));
    CHECK(h.a(2, 2) == m(S, S));
    CHECK(h.b(1, 2) == m(PHI, U));
    CHECK(h.b(2, 1) == m(S, RHO));
    CHECK(h.c(1, 1) == m(RHO, PHI));
    CHECK(h.c(2, 2) == m(U, S));
    CHECK(h.d(1, 2) == m(RHO, U));
    CHECK(h.d(2, 2) == m(U, U));
}

TEST_CASE("matrix text input") {
    Mat4 m = parse_matrix16("1 0 0 0  0 1 0 0  1 0 1 0  0 0 0 1");
    CHECK(m(RHO, PHI) == 1.0);
    CHECK_THROWS_AS(parse_matrix16("1 2 3"), Error);
    CHECK_THROWS_AS(parse_matrix16("1 2 3 4 5 6 7 8 9 10 11 12 13 14 15 16 17"), Error);
    CHECK_THROWS_AS(parse_matrix16("a b c d e f g h i j k l m n o p"), Error);
}

TEST_CASE("ensemble families satisfy their constraints") {
    auto strong = strongly_transverse_ensemble(41, 25);
    for (const HomoclinicMatrix& h : strong) {
        TransversalityReport r = transversality_report(h);
        CHECK(r.strongly_transverse);
        CHECK(std::fabs(r.delta) >= 0.5);
        CHECK(std::fabs(r.d22) >= 0.5);
    }
    auto dz = d22_zero_ensemble(43, 10);
    for (const HomoclinicMatrix& h : dz) {
        CHECK(h.d(2, 2) == 0.0);
        CHECK(transversality_delta(h) >= 0.5);
        CHECK(is_symplectic(h.pi(), Tolerances{}.tol_spec));
    }
}
