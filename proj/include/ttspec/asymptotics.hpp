#pragma once

#include <vector>

#include "ttspec/transition.hpp"

namespace ttspec {

/// One row of the eigenvalue-law verification table. The dominant S-root
/// S2 tracks d22 * lambda^-n, the subdominant S1 tracks n*nu*Delta/d22 in
/// modulus; x1, x2 are the largest-modulus eigenvalues of the respective
/// pairs (all real by the HyperbolicReal gate).
struct AsymptoticsRow {
    int n = 0;
    double x1 = 0.0;
    double x2 = 0.0;
    double x1_model = 0.0; // n*nu*Delta/d22, sign under test
    double x2_model = 0.0; // d22*lambda^-n
    double ratio1 = 0.0;   // |x1| / |x1_model|
    double ratio2 = 0.0;   // |x2| / |x2_model|
    int sign1 = 0;         // +1 if x1 and its model agree in sign
    Classification classification = Classification::Mixed;
};

struct AsymptoticsTable {
    std::vector<AsymptoticsRow> rows;
    double delta = 0.0;
    double d22 = 0.0;
};

/// Requires strong transversality and torsion; throws NotYetHyperbolic if a
/// requested n does not classify HyperbolicReal. Only the moduli ratios are
/// meaningful convergents; the sign of x1 relative to its model is reported,
/// not asserted.
AsymptoticsTable asymptotic_table(const HomoclinicMatrix& h, const LinearModelParams& p,
                                  const std::vector<int>& n_list, const RunConfig& cfg = {});

/// Identity except for the [rho][phi] entry delta; exactly symplectic.
HomoclinicMatrix special_case_matrix(double delta);

struct SpecialCaseParams {
    double delta = 0.0;
    LinearModelParams p;
    int n = 1;
};

/// The two palindromic factors of the shear-model characteristic polynomial:
/// x^2 - (delta n nu + 2) x + 1 from the (phi,rho) block and
/// x^2 - (lambda^n + lambda^-n) x + 1 from the (s,u) block.
struct SpecialCaseFactors {
    double s_torsion = 0.0; // delta*n*nu + 2
    double s_radial = 0.0;  // lambda^n + lambda^-n
    PalindromicQuartic expanded;
};

/// Computes the factors and cross-checks their product against the trace
/// oracle of the actual product matrix (1e-9 per coefficient); throws
/// FactorizationMismatch on disagreement.
SpecialCaseFactors special_case_factor(const SpecialCaseParams& sc,
                                       const RunConfig& cfg = {});

/// Coefficient gap (against the trace oracle) of the variant radial factor
/// lambda^(2n) + lambda^-n in place of lambda^n + lambda^-n. The variant is
/// a plausible transcription of the factorization; the oracle rejects it at
/// every n >= 1, and callers surface that record.
double special_case_variant_exponent_gap(const SpecialCaseParams& sc);

/// True iff delta != 0, nu != 0 and n is large enough that both factors
/// have |S| > 2 + tol_hyp. Agrees with full_report classification.
bool special_case_hyperbolicity(const SpecialCaseParams& sc, const RunConfig& cfg = {});

} // namespace ttspec
