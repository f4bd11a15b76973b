#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ttspec/errors.hpp"
#include "ttspec/linear_model.hpp"
#include "ttspec/palindromic.hpp"
#include "ttspec/symplectic.hpp"

using namespace ttspec;

TEST_CASE("apply_f_l pinned values") {
    {
        LinearModelParams p(0.0, 1.0, 0.5);
        Vec4 z(0.0, 1.0, 0.0, 1.0);
        Vec4 w = apply_f_l(p, z);
        CHECK(w.phi == doctest::Approx(0.0).epsilon(1e-15));
        CHECK(w.s == 0.5);
        CHECK(w.rho == 0.0);
        CHECK(w.u == 2.0);
    }
    {
        LinearModelParams p(0.1, 2.0, 0.5);
        Vec4 w = apply_f_l(p, Vec4(0.0, 0.0, 0.3, 0.0));
        CHECK(w.phi == doctest::Approx(0.7).epsilon(1e-15)); // 0.1 + 2 * 0.3
        CHECK(w.rho == 0.3);
    }
    {
        LinearModelParams p(0.0, 3.0, 0.25);
        Vec4 fixed(1.234, 0.0, 0.0, 0.0);
        Vec4 w = apply_f_l(p, fixed);
        CHECK(w.phi == doctest::Approx(1.234).epsilon(1e-15));
        CHECK(w.s == 0.0);
        CHECK(w.rho == 0.0);
        CHECK(w.u == 0.0);
    }
}

TEST_CASE("parameter validation and torsion flag") {
    CHECK_THROWS_AS(LinearModelParams(0.0, 1.0, 1.5), Error);
    CHECK_THROWS_AS(LinearModelParams(0.0, 1.0, 0.0), Error);
    CHECK_THROWS_AS(LinearModelParams(0.0, std::numeric_limits<double>::infinity(), 0.5),
                    NonFinite);
    CHECK(LinearModelParams(0.0, 1e-300, 0.5).with_torsion()); // exact test, no band
    CHECK_FALSE(LinearModelParams(0.0, 0.0, 0.5).with_torsion());
}

TEST_CASE("d_f_l matrix") {
    LinearModelParams p0(0.0, 0.0, 0.5);
    Mat4 d0 = d_f_l(p0);
    Mat4 want = Mat4::identity();
    want(S, S) = 0.5;
    want(U, U) = 2.0;
    CHECK(max_abs_diff(d0, want) == 0.0);

    LinearModelParams p1(0.0, 1.0, 0.5);
    Mat4 d1 = d_f_l(p1);
    CHECK(d1(PHI, RHO) == 1.0);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> nu(-3.0, 3.0), lam(0.05, 0.95);
    for (int k = 0; k < 50; ++k) {
        LinearModelParams p(0.0, nu(rng), lam(rng));
        CHECK(is_symplectic(d_f_l(p), 1e-12));
    }
}

TEST_CASE("d_f_l_pow closed form") {
    LinearModelParams p(0.0, 1.0, 0.5);
    CHECK(max_abs_diff(d_f_l_pow(p, 1), d_f_l(p)) == 0.0);

    Mat4 d2 = d_f_l_pow(p, 2);
    CHECK(d2(PHI, RHO) == 2.0);
    CHECK(d2(S, S) == 0.25);
    CHECK(d2(U, U) == 4.0);

    LinearModelParams p0(0.0, 0.0, 0.5);
    Mat4 d10 = d_f_l_pow(p0, 10);
    CHECK(d10(S, S) == std::exp2(-10));
    CHECK(d10(U, U) == std::exp2(10));
    CHECK(d10(PHI, RHO) == 0.0);
}

TEST_CASE("d_f_l_pow equals iterated product and stays symplectic") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> nu(-2.0, 2.0), lam(0.3, 0.9);
    for (int k = 0; k < 25; ++k) {
        LinearModelParams p(0.0, nu(rng), lam(rng));
        int guard = guard_max_n(p.lambda);
        int n = 1 + static_cast<int>(rng() % static_cast<unsigned>(guard));
        Mat4 folded = d_f_l(p);
        for (int i = 1; i < n; ++i) folded = mat_mul(folded, d_f_l(p));
        Mat4 closed = d_f_l_pow(p, n);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                double scale = std::max({1.0, std::fabs(closed(i, j)), std::fabs(folded(i, j))});
                CHECK(std::fabs(closed(i, j) - folded(i, j)) <= 1e-10 * scale);
            }
        CHECK(is_symplectic(closed, 1e-9 * std::max(1.0, norm_inf(closed))));
    }
}

TEST_CASE("iterated map agrees with the affine closed form") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    LinearModelParams p(0.37, 1.3, 0.6);
    for (int k = 0; k < 20; ++k) {
        Vec4 z(coord(rng) + 3.0, coord(rng), coord(rng), coord(rng));
        int n = 5 + static_cast<int>(rng() % 20);
        Vec4 it = z;
        for (int i = 0; i < n; ++i) it = apply_f_l(p, it);
        Vec4 cf = apply_f_l_pow(p, z, n);
        CHECK(angular_distance(it.phi, cf.phi) <= 1e-10);
        CHECK(std::fabs(it.s - cf.s) <= 1e-10 * std::max(1.0, std::fabs(cf.s)));
        CHECK(it.rho == cf.rho);
        CHECK(std::fabs(it.u - cf.u) <= 1e-10 * std::max(1.0, std::fabs(cf.u)));
    }
}

TEST_CASE("powers of the differential are never hyperbolic") {
    // spectrum {1, 1, lambda^n, lambda^-n}: the double eigenvalue 1 sits on
    // the unit circle for every n
    LinearModelParams p(0.0, 1.7, 0.5);
    for (int n : {1, 2, 5, 17, 40}) {
        PalindromicQuartic q = trace_coeffs(d_f_l_pow(p, n));
        Classification cls = classify(solve_palindromic(q), Tolerances{}.tol_hyp);
        CHECK(cls == Classification::NonHyperbolicParabolic);
    }
}

TEST_CASE("precision guard") {
    CHECK(guard_max_n(0.5) == 46);
    CHECK(guard_max_n(0.3) == 26);
    CHECK(guard_max_n(0.8) == 142);
    LinearModelParams p(0.0, 1.0, 0.5);
    CHECK_NOTHROW(d_f_l_pow(p, 46));
    CHECK_THROWS_AS(d_f_l_pow(p, 47), ConditioningExceeded);
    CHECK_THROWS_AS(d_f_l_pow(p, 0), Error);
}
