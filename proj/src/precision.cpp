#include "ttspec/precision.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "ttspec/errors.hpp"
#include "ttspec/sym_charpoly.hpp"
#include "ttspec/transition.hpp"

namespace ttspec {

namespace {

using mpf = boost::multiprecision::cpp_bin_float_50;
using rat = boost::multiprecision::cpp_rational;
using bigint = boost::multiprecision::cpp_int;

template <class T>
Mat4T<T> convert_mat(const Mat4& m) {
    Mat4T<T> r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r(i, j) = T(m(i, j));
    return r;
}

rat rat_pow(const rat& x, int n) {
    bigint num = boost::multiprecision::numerator(x);
    bigint den = boost::multiprecision::denominator(x);
    return rat(boost::multiprecision::pow(num, static_cast<unsigned>(n)),
               boost::multiprecision::pow(den, static_cast<unsigned>(n)));
}

/// exact square root of a nonnegative rational, if one exists
bool rational_sqrt(const rat& x, rat& root) {
    if (x < 0) return false;
    bigint num = boost::multiprecision::numerator(x);
    bigint den = boost::multiprecision::denominator(x);
    bigint rn = boost::multiprecision::sqrt(num);
    bigint rd = boost::multiprecision::sqrt(den);
    if (rn * rn != num || rd * rd != den) return false;
    root = rat(rn, rd);
    return true;
}

double to_double(const rat& x) { return x.convert_to<double>(); }

} // namespace

PalindromicQuartic coeffs_extended(const HomoclinicMatrix& h, const LinearModelParams& p,
                                   int n, double& rel_gap) {
    const mpf lam(p.lambda);
    const mpf lam_n = pow(lam, n);
    const mpf lam_mn = 1 / lam_n;
    const mpf nu(p.nu);

    mpf a_closed, b_closed;
    closed_form_coeffs_t<mpf>(h, nu, lam_n, lam_mn, n, a_closed, b_closed);

    Mat4T<mpf> m = mat_mul(convert_mat<mpf>(h.pi()), d_f_l_pow_t<mpf>(nu, lam_n, lam_mn, n));
    mpf e1, e2, e3, e4;
    sym_char_coeffs(m, e1, e2, e3, e4);
    const mpf a_trace = -e1;
    const mpf b_trace = e2;

    mpf scale = (std::max)({mpf(1), abs(a_closed), abs(b_closed)});
    mpf gap = (std::max)(abs(a_closed - a_trace), abs(b_closed - b_trace)) / scale;
    rel_gap = gap.convert_to<double>();

    return {a_closed.convert_to<double>(), b_closed.convert_to<double>()};
}

PalindromicQuartic ExactCoeffs::rounded() const { return {to_double(a), to_double(b)}; }

ExactCoeffs coeffs_exact(const HomoclinicMatrix& h, const LinearModelParams& p, int n) {
    const rat lam(p.lambda);
    const rat lam_n = rat_pow(lam, n);
    const rat lam_mn = rat(boost::multiprecision::denominator(lam_n),
                           boost::multiprecision::numerator(lam_n));
    const rat nu(p.nu);

    ExactCoeffs out;
    closed_form_coeffs_t<rat>(h, nu, lam_n, lam_mn, n, out.a, out.b);

    Mat4T<rat> m = mat_mul(convert_mat<rat>(h.pi()), d_f_l_pow_t<rat>(nu, lam_n, lam_mn, n));
    rat e1, e2, e3, e4;
    sym_char_coeffs(m, e1, e2, e3, e4);
    if (out.a != -e1 || out.b != e2)
        throw OracleMismatch("coeffs_exact: closed-form and minor routes disagree in "
                             "exact arithmetic (implementation fault)");
    return out;
}

namespace {

std::array<cplx, 2> pair_from_exact_s(const rat& s, bool& resolved) {
    rat disc = s * s - 4;
    resolved = true;
    if (disc > 0) {
        rat r;
        if (rational_sqrt(disc, r)) {
            rat big;
            if (s > 0)
                big = (s + r) / 2;
            else
                big = (s - r) / 2;
            rat small = 1 / big;
            return {cplx(to_double(big), 0.0), cplx(to_double(small), 0.0)};
        }
        resolved = false;
        return {};
    }
    if (disc == 0) {
        double x = to_double(s) / 2.0; // exactly +-1
        return {cplx(x, 0.0), cplx(x, 0.0)};
    }
    // |S| < 2: unit-circle pair
    mpf im = sqrt(mpf(-disc).convert_to<mpf>()) / 2;
    cplx x(to_double(s) / 2.0, im.convert_to<double>());
    return {x, std::conj(x)};
}

} // namespace

PalindromicRoots solve_palindromic_exact(const ExactCoeffs& q) {
    const rat A = q.a;
    const rat C = q.b - 2;
    const rat disc = A * A - 4 * C;

    if (disc >= 0) {
        rat r;
        if (rational_sqrt(disc, r)) {
            rat s_hi = (-A + r) / 2;
            rat s_lo = (-A - r) / 2;
            if (abs(s_lo) > abs(s_hi)) std::swap(s_hi, s_lo);

            PalindromicRoots out;
            out.s_roots = {cplx(to_double(s_hi), 0.0), cplx(to_double(s_lo), 0.0)};
            out.s_real = {true, true};

            bool ok0 = false, ok1 = false;
            auto p0 = pair_from_exact_s(s_hi, ok0);
            auto p1 = pair_from_exact_s(s_lo, ok1);
            // irrational inner discriminant: compensated double path on the
            // exactly-known S value
            PalindromicRoots fallback =
                solve_palindromic(PalindromicQuartic{to_double(q.a), to_double(q.b)});
            out.eigenvalues[0] = ok0 ? p0[0] : fallback.eigenvalues[0];
            out.eigenvalues[1] = ok0 ? p0[1] : fallback.eigenvalues[1];
            out.eigenvalues[2] = ok1 ? p1[0] : fallback.eigenvalues[2];
            out.eigenvalues[3] = ok1 ? p1[1] : fallback.eigenvalues[3];
            return out;
        }
    }
    // irrational or complex S: the compensated double path is already
    // accurate to rounding there
    return solve_palindromic(PalindromicQuartic{to_double(q.a), to_double(q.b)});
}

SpecialCaseExactCheck special_case_exact_check(double delta, const LinearModelParams& p,
                                               int n) {
    Mat4 pi = Mat4::identity();
    pi(RHO, PHI) = delta;
    HomoclinicMatrix h = HomoclinicMatrix::checked(pi);
    ExactCoeffs exact = coeffs_exact(h, p, n);

    const rat lam(p.lambda);
    const rat lam_n = rat_pow(lam, n);
    const rat lam_mn = rat(boost::multiprecision::denominator(lam_n),
                           boost::multiprecision::numerator(lam_n));
    const rat s_torsion = rat(delta) * n * rat(p.nu) + 2;
    const rat s_radial = lam_n + lam_mn;
    const rat s_variant = lam_n * lam_n + lam_mn;

    auto expand_a = [&](const rat& sa, const rat& sb) { return rat(-(sa + sb)); };
    auto expand_b = [&](const rat& sa, const rat& sb) { return rat(2 + sa * sb); };

    SpecialCaseExactCheck out;
    out.correct_matches = (expand_a(s_torsion, s_radial) == exact.a) &&
                          (expand_b(s_torsion, s_radial) == exact.b);
    out.variant_matches = (expand_a(s_torsion, s_variant) == exact.a) &&
                          (expand_b(s_torsion, s_variant) == exact.b);
    return out;
}

bool special_case_variant_differs_exactly(double lambda, int n) {
    const rat lam(lambda);
    const rat lam_n = rat_pow(lam, n);
    return lam_n * lam_n != lam_n; // lambda^(2n) != lambda^n for lambda in (0,1)
}

} // namespace ttspec
