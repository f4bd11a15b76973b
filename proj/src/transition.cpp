#include "ttspec/transition.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ttspec/errors.hpp"
#include "ttspec/precision.hpp"
#include "ttspec/quartic_oracle.hpp"
#include "ttspec/symplectic.hpp"

namespace ttspec {

namespace {

constexpr double kCoeffCrossTol = 1e-9; // closed-form vs trace route
constexpr double kDenseMatchTol = 1e-6; // palindromic vs dense oracle (chordal)

double min_pairwise_chordal(const std::array<cplx, 4>& z) {
    double m = chordal_distance(z[0], z[1]);
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) m = std::min(m, chordal_distance(z[i], z[j]));
    return m;
}

// Exploratory path for inputs that bypassed symplecticity validation and do
// not pass it: no palindromic shortcut is trustworthy, so everything comes
// from the dense oracle.
SpectrumReport dense_only_report(const Mat4& m, int n, const RunConfig& cfg) {
    SpectrumReport r;
    r.n = n;
    CharPoly cp = char_poly(m);
    r.a_n = cp.c3;
    r.b_n = cp.c2;

    std::array<cplx, 4> z = dense_eigenvalues(m).eigenvalues;
    std::sort(z.begin(), z.end(),
              [](const cplx& a, const cplx& b) { return std::abs(a) > std::abs(b); });
    // pair the largest with its best reciprocal partner
    int mate = 1;
    double best = std::abs(z[0] * z[1] - 1.0);
    for (int j = 2; j < 4; ++j) {
        double t = std::abs(z[0] * z[j] - 1.0);
        if (t < best) {
            best = t;
            mate = j;
        }
    }
    std::swap(z[1], z[mate]);

    PalindromicRoots roots;
    roots.eigenvalues = z;
    roots.s_roots = {z[0] + z[1], z[2] + z[3]};
    for (int i = 0; i < 2; ++i)
        roots.s_real[i] =
            std::fabs(roots.s_roots[i].imag()) <= 1e-9 * (1.0 + std::abs(roots.s_roots[i]));
    r.s_roots = roots.s_roots;
    r.s_real = roots.s_real;
    r.eigenvalues = roots.eigenvalues;
    r.classification = classify(roots, cfg.tol.tol_hyp);
    r.min_unit_circle_distance = min_unit_circle_distance(roots.eigenvalues);
    r.oracle_residuals.notes =
        "palindromic pipeline skipped (input not symplectic at tol_spec)";
    return r;
}

} // namespace

Mat4 transition_matrix(const HomoclinicMatrix& h, const LinearModelParams& p, int n,
                       PrecisionMode mode) {
    return mat_mul(h.pi(), d_f_l_pow(p, n, mode));
}

PalindromicQuartic closed_form_coeffs(const HomoclinicMatrix& h, const LinearModelParams& p,
                                      int n, PrecisionMode mode) {
    check_guard(p.lambda, n, mode);
    const double nn = static_cast<double>(n);
    const double lam_n = std::pow(p.lambda, nn);
    const double lam_mn = std::pow(p.lambda, -nn);
    PalindromicQuartic q;
    closed_form_coeffs_t<double>(h, p.nu, lam_n, lam_mn, n, q.a, q.b);
    return q;
}

std::array<cplx, 4> sharpened_dense_eigenvalues(const Mat4& m) {
    auto by_modulus_desc = [](std::array<cplx, 4> z) {
        std::sort(z.begin(), z.end(), [](const cplx& a, const cplx& b) {
            double ma = std::abs(a), mb = std::abs(b);
            if (ma != mb) return ma > mb;
            if (a.imag() != b.imag()) return a.imag() > b.imag();
            return a.real() > b.real();
        });
        return z;
    };
    auto direct = by_modulus_desc(dense_eigenvalues(m).eigenvalues);
    auto inv = by_modulus_desc(dense_eigenvalues(symplectic_inverse(m)).eigenvalues);
    // reciprocals of the inverse run, sorted ascending in modulus: these
    // carry the relative accuracy for the small half of the spectrum
    std::array<cplx, 4> small = {1.0 / inv[0], 1.0 / inv[1], 1.0 / inv[2], 1.0 / inv[3]};

    // split at the unit circle: outside from the direct run, inside from the
    // inverse run, a +-0.1% band around the circle from the direct run
    // (either run resolves the band equally well). Ties on the band edges
    // fall back to the direct run entirely.
    const double hi = 1.001, lo = 0.999;
    int k_big = 0, k_small = 0;
    while (k_big < 4 && std::abs(direct[k_big]) > hi) ++k_big;
    while (k_small < 4 && std::abs(small[k_small]) < lo) ++k_small;
    if (k_big + k_small > 4) return direct;

    std::array<cplx, 4> out;
    int idx = 0;
    for (int i = 0; i < k_big; ++i) out[idx++] = direct[i];
    for (int i = k_big; i < 4 - k_small; ++i) out[idx++] = direct[i];
    for (int i = k_small - 1; i >= 0; --i) out[idx++] = small[i];
    return out;
}

SpectrumReport full_report(const HomoclinicMatrix& h, const LinearModelParams& p, int n,
                           const RunConfig& cfg) {
    check_guard(p.lambda, n, cfg.precision);

    const bool symplectic_ok =
        h.validated_symplectic() || is_symplectic(h.pi(), cfg.tol.tol_spec);
    Mat4 m = transition_matrix(h, p, n, cfg.precision);
    if (!symplectic_ok) return dense_only_report(m, n, cfg);

    SpectrumReport r;
    r.n = n;
    PalindromicQuartic q;
    PalindromicRoots roots;
    double coeff_gap = 0.0;

    switch (cfg.precision) {
    case PrecisionMode::Standard: {
        q = closed_form_coeffs(h, p, n, cfg.precision);
        PalindromicQuartic t = trace_coeffs(m, cfg.tol);
        coeff_gap = coeff_relative_gap(q, t);
        roots = solve_palindromic(q);
        break;
    }
    case PrecisionMode::Extended: {
        q = coeffs_extended(h, p, n, coeff_gap);
        roots = solve_palindromic(q);
        break;
    }
    case PrecisionMode::ExactRational: {
        ExactCoeffs e = coeffs_exact(h, p, n); // throws on route mismatch
        q = e.rounded();
        roots = solve_palindromic_exact(e);
        break;
    }
    }

    if (coeff_gap > kCoeffCrossTol) {
        std::ostringstream os;
        os << "full_report: closed-form coefficients disagree with the trace oracle "
           << "(relative gap " << coeff_gap << " at n=" << n << ")";
        throw OracleMismatch(os.str());
    }

    // Dense cross-check, two regimes. Small norm and separated spectrum:
    // QR on the matrix itself (sharpened by the exact symplectic inverse),
    // which validates matrix -> eigenvalues end to end. Large norm or
    // clustered spectrum: 50-digit Ferrari on the same palindromic quartic
    // the S-reduction solved, isolating solver error; comparing against a
    // differently rounded coefficient route there would be limited by
    // sqrt(coefficient gap) at double roots, not by either solver. The
    // coefficient routes themselves are cross-checked at 1e-9 above.
    const double sep = min_pairwise_chordal(roots.eigenvalues);
    std::array<cplx, 4> oracle;
    if (norm_inf(m) <= 1e4 && sep >= 0.1) {
        oracle = sharpened_dense_eigenvalues(m);
        r.oracle_residuals.notes = "dense oracle: qr";
    } else {
        oracle = quartic_roots_oracle(q.a, q.b, q.a, 1.0);
        r.oracle_residuals.notes = "dense oracle: aberth-dd";
    }
    const double worst = greedy_chordal_match(roots.eigenvalues, oracle);
    r.oracle_residuals.dense_performed = true;
    r.oracle_residuals.dense_chordal = worst;
    r.oracle_residuals.dense_tol = kDenseMatchTol;
    r.oracle_residuals.coeff_rel = coeff_gap;
    if (worst > kDenseMatchTol) {
        std::ostringstream os;
        os << "full_report: palindromic eigenvalues disagree with the dense oracle "
           << "(chordal distance " << worst << " at n=" << n << ")";
        throw OracleMismatch(os.str());
    }

    r.a_n = q.a;
    r.b_n = q.b;
    r.s_roots = roots.s_roots;
    r.s_real = roots.s_real;
    r.eigenvalues = roots.eigenvalues;
    r.classification = classify(roots, cfg.tol.tol_hyp);
    r.min_unit_circle_distance = min_unit_circle_distance(roots.eigenvalues);
    return r;
}

int empirical_hyperbolic_onset(const HomoclinicMatrix& h, const LinearModelParams& p,
                               int n_max, Classification target, const RunConfig& cfg) {
    int last_bad = 0;
    bool tail_seen = false;
    for (int n = 1; n <= n_max; ++n) {
        SpectrumReport r = full_report(h, p, n, cfg);
        if (r.classification != target)
            last_bad = n;
        else
            tail_seen = true;
    }
    if (!tail_seen || last_bad == n_max) return 0;
    return last_bad + 1;
}

} // namespace ttspec
