#pragma once

#include <string>

#include "ttspec/homoclinic.hpp"
#include "ttspec/linear_model.hpp"
#include "ttspec/palindromic.hpp"
#include "ttspec/spectrum.hpp"

namespace ttspec {

/// The transition matrix M_n = Pi * (Df_l)^n.
Mat4 transition_matrix(const HomoclinicMatrix& h, const LinearModelParams& p, int n,
                       PrecisionMode mode = PrecisionMode::Standard);

/// Closed-form palindromic coefficients of det(x I - Pi Df_l^n):
///   A(n) = -d22 l^-n - l^n a22 - n nu c11 - a11 - d11
///   B(n) = l^n  [|A| + a22 d11 - c12 b21 + n nu (a22 c11 - c12 a21)]
///        + l^-n [|D| + a11 d22 - c21 b12 + n nu Delta]
///        + (a11 d11 + a22 d22 - c22 b22 - c11 b11)
/// Generic in the scalar so the extended and exact modes evaluate the same
/// expression tree.
template <class T>
void closed_form_coeffs_t(const HomoclinicMatrix& h, const T& nu, const T& lam_n,
                          const T& lam_mn, int n, T& a_out, T& b_out) {
    const T a11(h.a(1, 1)), a12(h.a(1, 2)), a21(h.a(2, 1)), a22(h.a(2, 2));
    const T b11(h.b(1, 1)), b12(h.b(1, 2)), b21(h.b(2, 1)), b22(h.b(2, 2));
    const T c11(h.c(1, 1)), c12(h.c(1, 2)), c21(h.c(2, 1)), c22(h.c(2, 2));
    const T d11(h.d(1, 1)), d12(h.d(1, 2)), d21(h.d(2, 1)), d22(h.d(2, 2));
    const T nnu = T(n) * nu;

    a_out = -d22 * lam_mn - lam_n * a22 - nnu * c11 - a11 - d11;

    const T det_a = a11 * a22 - a12 * a21;
    const T det_d = d11 * d22 - d12 * d21;
    const T delta = c11 * d22 - d12 * c21;
    b_out = lam_n * (det_a + a22 * d11 - c12 * b21 + nnu * (a22 * c11 - c12 * a21)) +
            lam_mn * (det_d + a11 * d22 - c21 * b12 + nnu * delta) +
            (a11 * d11 + a22 * d22 - c22 * b22 - c11 * b11);
}

PalindromicQuartic closed_form_coeffs(const HomoclinicMatrix& h, const LinearModelParams& p,
                                      int n, PrecisionMode mode = PrecisionMode::Standard);

struct OracleResiduals {
    double coeff_rel = 0.0;      // closed-form vs trace-route gap
    bool dense_performed = false;
    double dense_chordal = 0.0;  // worst matched chordal distance vs dense oracle
    double dense_tol = 0.0;      // tolerance actually applied (condition-aware)
    std::string notes;
};

struct SpectrumReport {
    int n = 0;
    double a_n = 0.0;
    double b_n = 0.0;
    std::array<cplx, 2> s_roots{};
    std::array<bool, 2> s_real{};
    std::array<cplx, 4> eigenvalues{};
    Classification classification = Classification::Mixed;
    double min_unit_circle_distance = 0.0;
    OracleResiduals oracle_residuals;
};

/// Dense eigenvalues sharpened for symplectic input: the two largest moduli
/// come from QR on M, the two smallest from reciprocals of QR on the exact
/// symplectic inverse -J M^T J. Each half is in the regime where QR carries
/// full relative accuracy, so the combination stays meaningful for norms up
/// to the precision guard where plain QR loses the small pair entirely.
std::array<cplx, 4> sharpened_dense_eigenvalues(const Mat4& m);

/// Run the whole pipeline: closed-form coefficients, trace-route
/// cross-check, S-reduction solve, dense-oracle cross-check, classification.
/// Throws OracleMismatch if the routes disagree beyond tolerance and
/// ConditioningExceeded past the mode guard.
SpectrumReport full_report(const HomoclinicMatrix& h, const LinearModelParams& p, int n,
                           const RunConfig& cfg = {});

/// Smallest N0 such that every n in [N0, n_max] classifies as `target`,
/// found by a linear scan (the classification is not guaranteed monotone in
/// n, so no bisection). Returns 0 when even n_max does not qualify.
int empirical_hyperbolic_onset(const HomoclinicMatrix& h, const LinearModelParams& p,
                               int n_max, Classification target,
                               const RunConfig& cfg = {});

} // namespace ttspec
