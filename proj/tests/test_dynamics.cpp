#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ttspec/asymptotics.hpp"
#include "ttspec/dynamics.hpp"
#include "ttspec/errors.hpp"
#include "ttspec/transition.hpp"

using namespace ttspec;

namespace {

// shear-model test bench: p+ at angle 0.3, p- at angle 4.0, omega aligned so
// the six-step orbit lands exactly on p-'s angle
struct Bench {
    double lambda = 0.5;
    int nb = 6;
    LinearModelParams p{(4.0 - 0.3) / 6, 1.0, 0.5};
    HomoclinicMatrix h = special_case_matrix(1.0);
    WindowConfig w{Vec4(0.3, 1.0, 0.0, 0.0), Vec4(4.0, 0.0, 0.0, 1.0), 0.1, 0.05};

    std::array<double, 4> branch_point() const {
        return {0.0, 0.0, 0.0, std::exp2(-nb) / w.mu};
    }
};

} // namespace

TEST_CASE("in_box") {
    Vec4 center(1.0, 0.5, 0.0, 0.0);
    CHECK(in_box(center, 0.1, center));
    CHECK_FALSE(in_box(center, 0.1, Vec4(1.0, 0.7, 0.0, 0.0)));
    // angular wrap: phi distance between 0.05 and 2*pi - 0.02 is 0.07
    CHECK(in_box(Vec4(0.05, 0.0, 0.0, 0.0), 0.1, Vec4(two_pi - 0.02, 0.0, 0.0, 0.0)));
    CHECK_THROWS_AS(in_box(center, 0.0, center), Error);
}

TEST_CASE("window config validation") {
    CHECK_THROWS_AS(WindowConfig(Vec4(0, 1, 0.1, 0), Vec4(0, 0, 0, 1), 0.1, 0.05), Error);
    CHECK_THROWS_AS(WindowConfig(Vec4(0, 1, 0, 0), Vec4(0, 0.2, 0, 1), 0.1, 0.05), Error);
    CHECK_THROWS_AS(WindowConfig(Vec4(0, 1, 0, 0), Vec4(0, 0, 0, 1), 0.1, 0.2), Error);
    CHECK(WindowConfig::default_radius(Vec4(0, 0.5, 0, 0), Vec4(0, 0, 0, 2.0)) == 0.05);
}

TEST_CASE("return-time membership") {
    Bench b;
    // the stable-manifold point p+ has u = 0 and never crosses to V-
    for (int n = 1; n <= 20; ++n)
        CHECK_FALSE(dn_membership(b.w, b.p, b.w.p_plus, n));

    Vec4 z = window_to_section(b.w, b.branch_point());
    CHECK(dn_membership(b.w, b.p, z, b.nb));
    CHECK_FALSE(dn_membership(b.w, b.p, z, b.nb - 1));
    CHECK_FALSE(dn_membership(b.w, b.p, z, b.nb + 1));
    auto times = dn_return_times(b.w, b.p, z);
    REQUIRE(times.size() == 1);
    CHECK(times[0] == b.nb);
}

TEST_CASE("transverse map picks the smallest qualifying return time") {
    Bench b;
    Vec4 z = window_to_section(b.w, b.branch_point());
    TransverseImage t = transverse_map(b.w, b.p, z);
    CHECK(t.n == b.nb);
    CHECK(t.image.u == doctest::Approx(1.0).epsilon(1e-14)); // lands on u- exactly
    CHECK_THROWS_AS(transverse_map(b.w, b.p, b.w.p_plus), NotInDomain);

    // agreement with the brute-force scan at every box point tried
    auto scan = dn_return_times(b.w, b.p, z);
    CHECK(scan.front() == t.n);
}

TEST_CASE("affine homoclinic correspondence") {
    Bench b;
    Vec4 img = homoclinic_map_l(b.h, b.w, b.w.p_minus);
    CHECK(angular_distance(img.phi, b.w.p_plus.phi) <= 1e-15);
    CHECK(img.s == b.w.p_plus.s);
    CHECK(img.rho == 0.0);
    CHECK(img.u == 0.0);

    // identity matrix: displacement along e_u carries over
    HomoclinicMatrix id = HomoclinicMatrix::checked(Mat4::identity());
    Vec4 zu = translate(b.w.p_minus, {0.0, 0.0, 0.0, 0.5});
    Vec4 img2 = homoclinic_map_l(id, b.w, zu);
    CHECK(img2.u == doctest::Approx(0.5).epsilon(1e-15));

    // shear model: a phi-displacement picks up delta in the rho component
    Vec4 zp = translate(b.w.p_minus, {1.0, 0.0, 0.0, 0.0});
    Vec4 img3 = homoclinic_map_l(b.h, b.w, zp);
    CHECK(angular_diff(img3.phi, b.w.p_plus.phi) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(img3.rho == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("window map is affine with linear part Pi Df^n") {
    Bench b;
    WindowImage i0 = window_map_l(b.h, b.w, b.p, b.branch_point());
    CHECK(i0.n == b.nb);

    Mat4 m = transition_matrix(b.h, b.p, b.nb);
    Mat4 jac = window_map_jacobian_fd(b.h, b.w, b.p, b.branch_point(), 1e-6);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(std::fabs(jac(i, j) - m(i, j)) <= 1e-6 * std::max(1.0, std::fabs(m(i, j))));

    // window center maps to p+ itself: a stable-manifold point
    CHECK_THROWS_AS(window_map_l(b.h, b.w, b.p, {0.0, 0.0, 0.0, 0.0}), NotInDomain);
    CHECK_THROWS_AS(window_map_l(b.h, b.w, b.p, {2.0, 0.0, 0.0, 0.0}), NotInDomain);
}

TEST_CASE("itineraries") {
    Bench b;
    CHECK(itinerary(b.h, b.w, b.p, b.branch_point(), 0).empty()); // k = 0

    // stable manifold: escape before the first return
    CHECK(itinerary(b.h, b.w, b.p, {0.1, 0.2, 0.05, 0.0}, 5).empty());

    // records satisfy exit = f^n(entry)
    auto recs = itinerary(b.h, b.w, b.p, b.branch_point(), 3);
    REQUIRE(!recs.empty());
    for (const ReturnRecord& r : recs) {
        Vec4 again = apply_f_l_pow(b.p, r.entry_point, r.n);
        CHECK(angular_distance(again.phi, r.exit_point.phi) <= 1e-10);
        CHECK(std::fabs(again.u - r.exit_point.u) <= 1e-10);
    }
}

TEST_CASE("u-expansion along a constant-n itinerary tracks the dominant eigenvalue") {
    Bench b;
    // branch fixed point solved from the affine structure
    Mat4 m = transition_matrix(b.h, b.p, b.nb);
    WindowImage i0 = window_map_l(b.h, b.w, b.p, b.branch_point());
    // (I - M) c* = b  with  b = image - M*c0
    Mat4 a;
    std::array<double, 4> rhs{};
    auto c0 = b.branch_point();
    for (int i = 0; i < 4; ++i) {
        double mc = 0.0;
        for (int j = 0; j < 4; ++j) {
            a(i, j) = (i == j ? 1.0 : 0.0) - m(i, j);
            mc += m(i, j) * c0[j];
        }
        rhs[i] = i0.c[i] - mc;
    }
    // 4x4 solve by Gaussian elimination on the small system
    std::array<std::array<double, 5>, 4> aug{};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) aug[i][j] = a(i, j);
        aug[i][4] = rhs[i];
    }
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int rr = col + 1; rr < 4; ++rr)
            if (std::fabs(aug[rr][col]) > std::fabs(aug[piv][col])) piv = rr;
        std::swap(aug[piv], aug[col]);
        for (int rr = 0; rr < 4; ++rr) {
            if (rr == col) continue;
            double f = aug[rr][col] / aug[col][col];
            for (int cc = col; cc <= 4; ++cc) aug[rr][cc] -= f * aug[col][cc];
        }
    }
    std::array<double, 4> cstar;
    for (int i = 0; i < 4; ++i) cstar[i] = aug[i][4] / aug[i][i];
    REQUIRE(in_window_domain(cstar));

    std::array<double, 4> cpert = cstar;
    cpert[U] += 2e-11;
    auto recs = itinerary(b.h, b.w, b.p, cpert, 10);
    REQUIRE(recs.size() >= 5);
    for (const ReturnRecord& r : recs) CHECK(r.n == b.nb);
    double measured = measured_u_expansion(b.w, recs);
    CHECK(measured == doctest::Approx(std::exp2(b.nb)).epsilon(0.05));

    CHECK(measured_u_expansion(b.w, {}) == 0.0);
}
