#include "ttspec/ensemble.hpp"

#include <cmath>

#include "ttspec/errors.hpp"
#include "ttspec/symplectic.hpp"

namespace ttspec {

Mat4 shear_phi_from_rho(double a) {
    Mat4 m = Mat4::identity();
    m(PHI, RHO) = a;
    return m;
}

Mat4 shear_rho_from_phi(double a) {
    Mat4 m = Mat4::identity();
    m(RHO, PHI) = a;
    return m;
}

Mat4 shear_s_from_u(double a) {
    Mat4 m = Mat4::identity();
    m(S, U) = a;
    return m;
}

Mat4 shear_u_from_s(double a) {
    Mat4 m = Mat4::identity();
    m(U, S) = a;
    return m;
}

Mat4 scale_su(double t) {
    Mat4 m = Mat4::identity();
    m(S, S) = t;
    m(U, U) = 1.0 / t;
    return m;
}

Mat4 scale_phirho(double t) {
    Mat4 m = Mat4::identity();
    m(PHI, PHI) = 1.0 / t;
    m(RHO, RHO) = t;
    return m;
}

Mat4 mixer_phi_u(double a) {
    Mat4 m = Mat4::identity();
    m(S, PHI) = a;
    m(RHO, U) = a;
    return m;
}

Mat4 mixer_phi_s(double a) {
    Mat4 m = Mat4::identity();
    m(RHO, S) = a;
    m(U, PHI) = -a;
    return m;
}

Mat4 mixer_rho_u(double a) {
    Mat4 m = Mat4::identity();
    m(PHI, U) = -a;
    m(S, RHO) = a;
    return m;
}

Mat4 mixer_rho_s(double a) {
    Mat4 m = Mat4::identity();
    m(PHI, S) = -a;
    m(U, RHO) = -a;
    return m;
}

Mat4 swap_phirho() {
    Mat4 m;
    m(RHO, PHI) = 1.0;
    m(PHI, RHO) = -1.0;
    m(S, S) = 1.0;
    m(U, U) = 1.0;
    return m;
}

Mat4 swap_su() {
    Mat4 m;
    m(U, S) = 1.0;
    m(S, U) = -1.0;
    m(PHI, PHI) = 1.0;
    m(RHO, RHO) = 1.0;
    return m;
}

Mat4 random_symplectic(std::mt19937_64& rng, const EnsembleOptions& opts) {
    std::uniform_int_distribution<int> nfac(opts.factors_min, opts.factors_max);
    std::uniform_int_distribution<int> family(0, opts.allow_swaps ? 11 : 9);
    std::uniform_real_distribution<double> coeff(-opts.coeff_max, opts.coeff_max);
    std::uniform_real_distribution<double> slog(-opts.scale_log_max, opts.scale_log_max);

    Mat4 m = Mat4::identity();
    const int k = nfac(rng);
    for (int i = 0; i < k; ++i) {
        Mat4 g;
        switch (family(rng)) {
        case 0: g = shear_phi_from_rho(coeff(rng)); break;
        case 1: g = shear_rho_from_phi(coeff(rng)); break;
        case 2: g = shear_s_from_u(coeff(rng)); break;
        case 3: g = shear_u_from_s(coeff(rng)); break;
        case 4: g = scale_su(std::exp(slog(rng))); break;
        case 5: g = scale_phirho(std::exp(slog(rng))); break;
        case 6: g = mixer_phi_u(coeff(rng)); break;
        case 7: g = mixer_phi_s(coeff(rng)); break;
        case 8: g = mixer_rho_u(coeff(rng)); break;
        case 9: g = mixer_rho_s(coeff(rng)); break;
        case 10: g = swap_phirho(); break;
        default: g = swap_su(); break;
        }
        m = mat_mul(m, g);
    }
    return m;
}

std::vector<Mat4> symplectic_ensemble(std::uint64_t seed, int count,
                                      const EnsembleOptions& opts) {
    std::mt19937_64 rng(seed);
    std::vector<Mat4> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) out.push_back(random_symplectic(rng, opts));
    return out;
}

std::vector<HomoclinicMatrix> strongly_transverse_ensemble(
    std::uint64_t seed, int count, const StrongTransverseOptions& opts) {
    std::mt19937_64 rng(seed);
    std::vector<HomoclinicMatrix> out;
    out.reserve(count);
    int guard = 0;
    while (static_cast<int>(out.size()) < count) {
        if (++guard > 1000 * count)
            throw Error("strongly_transverse_ensemble: rejection did not converge");
        Mat4 m = random_symplectic(rng, opts.base);
        if (norm_inf(m) > opts.max_entry) continue;
        HomoclinicMatrix h = HomoclinicMatrix::checked(m);
        double delta = transversality_delta(h);
        if (std::fabs(delta) < opts.min_delta) continue;
        if (std::fabs(h.d(2, 2)) < opts.min_d22) continue;
        if (opts.max_b_correction > 0.0) {
            double det_d = h.d(1, 1) * h.d(2, 2) - h.d(1, 2) * h.d(2, 1);
            double k2 = det_d + h.a(1, 1) * h.d(2, 2) - h.c(2, 1) * h.b(1, 2);
            if (std::fabs(k2 / delta) > opts.max_b_correction) continue;
        }
        out.push_back(h);
    }
    return out;
}

std::vector<HomoclinicMatrix> d22_zero_ensemble(std::uint64_t seed, int count,
                                                double min_delta) {
    std::mt19937_64 rng(seed);
    EnsembleOptions opts;
    std::vector<HomoclinicMatrix> out;
    out.reserve(count);
    int guard = 0;
    while (static_cast<int>(out.size()) < count) {
        if (++guard > 10000 * count)
            throw Error("d22_zero_ensemble: rejection did not converge");
        Mat4 g = random_symplectic(rng, opts);
        if (std::fabs(g(U, S)) < 0.2 || norm_inf(g) > 5.0) continue;
        // one more (s,u) shear cancels the d22 entry
        double t = -g(U, U) / g(U, S);
        if (!std::isfinite(t) || std::fabs(t) > 10.0) continue;
        Mat4 m = mat_mul(g, shear_s_from_u(t));
        m(U, U) = 0.0;
        if (!is_symplectic(m, Tolerances{}.tol_spec)) continue;
        HomoclinicMatrix h = HomoclinicMatrix::checked(m);
        if (transversality_delta(h) < min_delta) continue;
        out.push_back(h);
    }
    return out;
}

} // namespace ttspec
