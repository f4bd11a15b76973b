#include "ttspec/quartic_oracle.hpp"

#include <algorithm>
#include <cmath>

#include "ttspec/dd.hpp"
#include "ttspec/errors.hpp"
#include "ttspec/palindromic.hpp"

namespace ttspec {

namespace {

using detail::dd;

struct ddc {
    dd re, im;

    ddc() = default;
    ddc(double r) : re(r), im(0.0) {}
    ddc(const dd& r, const dd& i) : re(r), im(i) {}
};

ddc add(const ddc& a, const ddc& b) {
    return {detail::add(a.re, b.re), detail::add(a.im, b.im)};
}

ddc sub(const ddc& a, const ddc& b) {
    return {detail::sub(a.re, b.re), detail::sub(a.im, b.im)};
}

ddc mul(const ddc& a, const ddc& b) {
    dd re = detail::sub(detail::mul(a.re, b.re), detail::mul(a.im, b.im));
    dd im = detail::add(detail::mul(a.re, b.im), detail::mul(a.im, b.re));
    return {re, im};
}

dd norm2(const ddc& a) {
    return detail::add(detail::mul(a.re, a.re), detail::mul(a.im, a.im));
}

ddc div(const ddc& a, const ddc& b) {
    dd n = norm2(b);
    ddc num = mul(a, ddc(b.re, dd(-b.im.hi, -b.im.lo)));
    return {detail::div(num.re, n), detail::div(num.im, n)};
}

double abs_approx(const ddc& a) { return std::hypot(a.re.hi, a.im.hi); }

// Newton-polygon starting radii: upper convex hull of (k, log2 |c_k|);
// each hull edge of horizontal span m contributes m roots with modulus
// 2^(-slope).
std::array<double, 4> starting_radii(const std::array<double, 5>& coef) {
    std::array<double, 5> logc;
    for (int k = 0; k < 5; ++k) {
        double a = std::fabs(coef[k]);
        logc[k] = (a > 0.0) ? std::log2(a) : -4096.0;
    }
    int hull[5];
    int hn = 0;
    for (int k = 0; k < 5; ++k) {
        while (hn >= 2) {
            // pop while the new point keeps the hull concave from above
            double x1 = hull[hn - 2], y1 = logc[hull[hn - 2]];
            double x2 = hull[hn - 1], y2 = logc[hull[hn - 1]];
            if ((y2 - y1) * (k - x1) <= (logc[k] - y1) * (x2 - x1))
                --hn;
            else
                break;
        }
        hull[hn++] = k;
    }
    std::array<double, 4> radii{};
    int idx = 0;
    for (int e = 0; e + 1 < hn; ++e) {
        int k1 = hull[e], k2 = hull[e + 1];
        double slope = (logc[k2] - logc[k1]) / (k2 - k1);
        double r = std::exp2(-slope);
        if (!std::isfinite(r) || r <= 0.0) r = 1.0;
        for (int t = 0; t < k2 - k1 && idx < 4; ++t) radii[idx++] = r;
    }
    while (idx < 4) radii[idx++] = 1.0;
    // roots ascending in modulus: coefficient index counts from x^0
    std::sort(radii.begin(), radii.end());
    return radii;
}

} // namespace

std::array<cplx, 4> quartic_roots_oracle(double c3, double c2, double c1, double c0) {
    if (!std::isfinite(c3) || !std::isfinite(c2) || !std::isfinite(c1) ||
        !std::isfinite(c0))
        throw NonFinite("quartic_roots_oracle: non-finite coefficient");

    const std::array<double, 5> coef = {c0, c1, c2, c3, 1.0};
    auto radii = starting_radii(coef);

    std::array<ddc, 4> z;
    for (int i = 0; i < 4; ++i) {
        // spread angles with an irrational offset so symmetric
        // configurations cannot stall
        double th = 2.0 * std::numbers::pi * (i + 0.5) / 4.0 + 0.7;
        z[i] = ddc(dd(radii[i] * std::cos(th)), dd(radii[i] * std::sin(th)));
    }

    const ddc a3(c3), a2(c2), a1(c1), a0(c0);
    auto eval = [&](const ddc& x, ddc& f, ddc& df) {
        ddc one(1.0);
        f = add(mul(add(mul(add(mul(add(mul(one, x), a3), x), a2), x), a1), x), a0);
        // derivative by Horner as well
        ddc four(4.0), t3(3.0 * c3), t2(2.0 * c2);
        df = add(mul(add(mul(add(mul(four, x), ddc(t3)), x), ddc(t2)), x), a1);
    };

    for (int iter = 0; iter < 120; ++iter) {
        bool done = true;
        for (int i = 0; i < 4; ++i) {
            ddc f, df;
            eval(z[i], f, df);
            double fz = abs_approx(f);
            if (fz == 0.0) continue;
            if (norm2(df).to_double() == 0.0) {
                // sitting exactly on a critical point: nudge off
                z[i] = add(z[i], ddc(dd(1e-20 * (1.0 + abs_approx(z[i]))), dd(0.0)));
                done = false;
                continue;
            }
            ddc nw = div(f, df);
            ddc rep(0.0);
            for (int j = 0; j < 4; ++j) {
                if (j == i) continue;
                ddc d = sub(z[i], z[j]);
                if (norm2(d).to_double() == 0.0) {
                    d = ddc(dd(1e-20 * (1.0 + abs_approx(z[i]))), dd(0.0));
                }
                rep = add(rep, div(ddc(1.0), d));
            }
            ddc denom = sub(ddc(1.0), mul(nw, rep));
            ddc w = (norm2(denom).to_double() == 0.0) ? nw : div(nw, denom);
            z[i] = sub(z[i], w);
            if (abs_approx(w) > 1e-28 * (abs_approx(z[i]) + 1e-300)) done = false;
        }
        if (done) break;
    }

    std::array<cplx, 4> out;
    for (int i = 0; i < 4; ++i)
        out[i] = cplx(z[i].re.to_double(), z[i].im.to_double());
    return out;
}

std::array<cplx, 4> oracle_charpoly_eigenvalues(const Mat4& m) {
    CharPoly cp = char_poly(m);
    return quartic_roots_oracle(cp.c3, cp.c2, cp.c1, cp.c0);
}

} // namespace ttspec
