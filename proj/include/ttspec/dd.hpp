#pragma once

#include <cmath>

namespace ttspec::detail {

// Compensated (double-double) arithmetic, ~106-bit significand. Used where a
// difference of squared traces or a quadratic discriminant would otherwise
// lose everything to cancellation near the precision guard.
struct dd {
    double hi = 0.0;
    double lo = 0.0;

    dd() = default;
    dd(double h) : hi(h), lo(0.0) {}
    dd(double h, double l) : hi(h), lo(l) {}

    double to_double() const { return hi + lo; }
};

inline dd two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

inline dd two_prod(double a, double b) {
    double p = a * b;
    double err = std::fma(a, b, -p);
    return {p, err};
}

inline dd quick_renorm(double h, double l) {
    double s = h + l;
    double e = l - (s - h);
    return {s, e};
}

inline dd add(const dd& a, const dd& b) {
    dd s = two_sum(a.hi, b.hi);
    double lo = s.lo + a.lo + b.lo;
    return quick_renorm(s.hi, lo);
}

inline dd add(const dd& a, double b) { return add(a, dd(b)); }

inline dd sub(const dd& a, const dd& b) { return add(a, dd(-b.hi, -b.lo)); }

inline dd mul(const dd& a, const dd& b) {
    dd p = two_prod(a.hi, b.hi);
    double lo = p.lo + a.hi * b.lo + a.lo * b.hi;
    return quick_renorm(p.hi, lo);
}

inline dd mul(const dd& a, double b) { return mul(a, dd(b)); }

inline dd sqr(const dd& a) { return mul(a, a); }

inline dd div(const dd& a, const dd& b) {
    double q1 = a.hi / b.hi;
    dd r = sub(a, mul(b, q1));
    double q2 = r.hi / b.hi;
    r = sub(r, mul(b, q2));
    double q3 = r.hi / b.hi;
    return add(add(dd(q1), q2), q3);
}

/// sqrt with one Newton correction; exact when the argument is the exact
/// square of a double.
inline dd sqrt(const dd& a) {
    if (a.hi <= 0.0) return dd(0.0); // caller decides the sign branch
    double s0 = std::sqrt(a.hi + a.lo);
    dd r = sub(a, sqr(dd(s0)));
    double corr = r.to_double() / (2.0 * s0);
    return quick_renorm(s0, corr);
}

} // namespace ttspec::detail
