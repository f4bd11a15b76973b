#include "ttspec/palindromic.hpp"

#include <cmath>
#include <sstream>

#include "ttspec/dd.hpp"
#include "ttspec/errors.hpp"

namespace ttspec {

using detail::dd;

double coeff_relative_gap(const PalindromicQuartic& x, const PalindromicQuartic& y) {
    double scale = std::max({1.0, std::fabs(x.a), std::fabs(x.b), std::fabs(y.a), std::fabs(y.b)});
    return std::max(std::fabs(x.a - y.a), std::fabs(x.b - y.b)) / scale;
}

CharPoly char_poly(const Mat4& m) {
    if (!all_finite(m)) throw NonFinite("char_poly: non-finite entry");

    // p1 = tr(M), p2 = tr(M^2); c2 = (p1^2 - p2)/2 in compensated arithmetic
    dd p1(0.0), p2(0.0);
    for (int i = 0; i < 4; ++i) p1 = detail::add(p1, dd(m(i, i)));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            p2 = detail::add(p2, detail::two_prod(m(i, j), m(j, i)));
    dd c2 = detail::mul(detail::sub(detail::sqr(p1), p2), 0.5);

    // e3 = sum of principal 3x3 minors, e4 = det; both stay O(n)-sized
    // term by term for transition matrices, so plain minor expansion keeps
    // full relative accuracy where Newton identities would cancel.
    auto minor3dd = [&](int r0, int r1, int r2) {
        auto det2 = [&](int a, int b, int c, int d2) {
            return detail::sub(detail::two_prod(m(a, c), m(b, d2)),
                               detail::two_prod(m(a, d2), m(b, c)));
        };
        dd t = detail::mul(det2(r1, r2, r1, r2), m(r0, r0));
        t = detail::sub(t, detail::mul(det2(r1, r2, r0, r2), m(r0, r1)));
        t = detail::add(t, detail::mul(det2(r1, r2, r0, r1), m(r0, r2)));
        return t;
    };
    dd e3 = minor3dd(0, 1, 2);
    e3 = detail::add(e3, minor3dd(0, 1, 3));
    e3 = detail::add(e3, minor3dd(0, 2, 3));
    e3 = detail::add(e3, minor3dd(1, 2, 3));

    auto cof3 = [&](std::array<int, 3> rows, std::array<int, 3> cols) {
        auto det2 = [&](int a, int b, int c, int d2) {
            return detail::sub(detail::two_prod(m(a, c), m(b, d2)),
                               detail::two_prod(m(a, d2), m(b, c)));
        };
        dd t = detail::mul(det2(rows[1], rows[2], cols[1], cols[2]), m(rows[0], cols[0]));
        t = detail::sub(t, detail::mul(det2(rows[1], rows[2], cols[0], cols[2]), m(rows[0], cols[1])));
        t = detail::add(t, detail::mul(det2(rows[1], rows[2], cols[0], cols[1]), m(rows[0], cols[2])));
        return t;
    };
    dd e4 = detail::mul(cof3({1, 2, 3}, {1, 2, 3}), m(0, 0));
    e4 = detail::sub(e4, detail::mul(cof3({1, 2, 3}, {0, 2, 3}), m(0, 1)));
    e4 = detail::add(e4, detail::mul(cof3({1, 2, 3}, {0, 1, 3}), m(0, 2)));
    e4 = detail::sub(e4, detail::mul(cof3({1, 2, 3}, {0, 1, 2}), m(0, 3)));

    CharPoly cp;
    cp.c3 = -p1.to_double();
    cp.c2 = c2.to_double();
    cp.c1 = -e3.to_double();
    cp.c0 = e4.to_double();
    return cp;
}

PalindromicQuartic trace_coeffs(const Mat4& m, const Tolerances& tol) {
    CharPoly cp = char_poly(m);
    const double tol_pal = 1e-8;
    double scale = std::max({1.0, std::fabs(cp.c3), std::fabs(cp.c2)});
    if (std::fabs(cp.c1 - cp.c3) > tol_pal * scale ||
        std::fabs(cp.c0 - 1.0) > tol_pal * scale) {
        std::ostringstream os;
        os << "trace_coeffs: characteristic polynomial not palindromic"
           << " (c3=" << cp.c3 << " c1=" << cp.c1 << " c0=" << cp.c0
           << "); non-symplectic input?";
        throw NotPalindromic(os.str());
    }
    (void)tol;
    return {cp.c3, cp.c2};
}

std::string to_string(Classification c) {
    switch (c) {
    case Classification::HyperbolicReal: return "HyperbolicReal";
    case Classification::HyperbolicComplex: return "HyperbolicComplex";
    case Classification::NonHyperbolicElliptic: return "NonHyperbolicElliptic";
    case Classification::NonHyperbolicParabolic: return "NonHyperbolicParabolic";
    default: return "Mixed";
    }
}

namespace {

// roots of x^2 - Sx + 1 = 0 for real S, discriminant in compensated
// arithmetic; returns {big root, reciprocal}
std::array<cplx, 2> reciprocal_pair_real(double s) {
    dd disc = detail::sub(detail::sqr(dd(s)), dd(4.0));
    double d = disc.to_double();
    if (d > 0.0) {
        dd r = detail::sqrt(disc);
        dd big = detail::mul(detail::add(dd(std::fabs(s)), r), 0.5);
        double xb = std::copysign(big.to_double(), s);
        return {cplx(xb, 0.0), cplx(1.0 / xb, 0.0)};
    }
    if (d == 0.0) {
        double x = s / 2.0; // exactly +-1
        return {cplx(x, 0.0), cplx(x, 0.0)};
    }
    // |S| < 2: unit-circle pair, imaginary part from the complement 4 - S^2
    dd comp = detail::sub(dd(4.0), detail::sqr(dd(s)));
    double im = detail::sqrt(comp).to_double() / 2.0;
    cplx x(s / 2.0, im);
    return {x, std::conj(x)};
}

std::array<cplx, 2> reciprocal_pair_complex(const cplx& s) {
    cplx disc = s * s - 4.0;
    cplx r = std::sqrt(disc);
    // align the square root with S so the addition below cannot cancel
    if (std::real(std::conj(s) * r) < 0.0) r = -r;
    cplx big = 0.5 * (s + r);
    if (big == cplx(0.0, 0.0)) return {cplx(0.0, 1.0), cplx(0.0, -1.0)};
    return {big, 1.0 / big};
}

} // namespace

PalindromicRoots solve_palindromic(const PalindromicQuartic& q) {
    if (!std::isfinite(q.a) || !std::isfinite(q.b))
        throw NonFinite("solve_palindromic: non-finite coefficient");

    PalindromicRoots out;

    // S^2 + a S + (b - 2) = 0
    const double A = q.a;
    dd C = detail::add(dd(q.b), -2.0);
    dd disc = detail::sub(detail::sqr(dd(A)), detail::mul(C, 4.0));
    const double d = disc.to_double();

    if (d >= 0.0) {
        dd r = detail::sqrt(disc);
        // Vieta split: the large root first, the small one as C / large
        double s_big, s_small;
        if (A == 0.0 && r.to_double() == 0.0) {
            s_big = s_small = 0.0;
        } else {
            dd qq = detail::mul(detail::add(dd(std::fabs(A)), r), -0.5);
            double qneg = qq.to_double(); // -(|A| + r)/2
            s_big = (A > 0.0) ? qneg : -qneg;
            if (qneg == 0.0) {
                s_small = 0.0;
            } else {
                s_small = detail::div(C, dd(s_big)).to_double();
            }
        }
        out.s_roots = {cplx(s_big, 0.0), cplx(s_small, 0.0)};
        out.s_real = {true, true};
        auto p0 = reciprocal_pair_real(s_big);
        auto p1 = reciprocal_pair_real(s_small);
        out.eigenvalues = {p0[0], p0[1], p1[0], p1[1]};
    } else {
        double re = -A / 2.0;
        double im = std::sqrt(-d) / 2.0;
        cplx s0(re, im), s1(re, -im);
        out.s_roots = {s0, s1};
        out.s_real = {false, false};
        auto p0 = reciprocal_pair_complex(s0);
        auto p1 = reciprocal_pair_complex(s1);
        out.eigenvalues = {p0[0], p0[1], p1[0], p1[1]};
    }
    return out;
}

double min_unit_circle_distance(const std::array<cplx, 4>& eigenvalues) {
    double m = std::fabs(std::abs(eigenvalues[0]) - 1.0);
    for (int i = 1; i < 4; ++i)
        m = std::min(m, std::fabs(std::abs(eigenvalues[i]) - 1.0));
    return m;
}

Classification classify(const PalindromicRoots& roots, double tol_hyp) {
    const double min_dist = min_unit_circle_distance(roots.eigenvalues);
    if (min_dist > tol_hyp)
        return (roots.s_real[0] && roots.s_real[1]) ? Classification::HyperbolicReal
                                                    : Classification::HyperbolicComplex;
    for (const cplx& z : roots.eigenvalues) {
        if (std::abs(z - 1.0) <= tol_hyp || std::abs(z + 1.0) <= tol_hyp)
            return Classification::NonHyperbolicParabolic;
    }
    for (int i = 0; i < 2; ++i) {
        if (roots.s_real[i] && std::fabs(roots.s_roots[i].real()) < 2.0 - tol_hyp)
            return Classification::NonHyperbolicElliptic;
    }
    return Classification::Mixed;
}

} // namespace ttspec
