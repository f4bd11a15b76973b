#pragma once

#include "ttspec/mat4.hpp"
#include "ttspec/tolerances.hpp"

namespace ttspec {

/// Linear part of the homoclinic correspondence between the outgoing
/// neighborhood of p- and the incoming neighborhood of p+, stored in the
/// basis (e_phi, e_s, e_rho, e_u) with 2x2 blocks
///   Pi = [A B; C D],  A on rows/cols {phi,s}, D on rows/cols {rho,u}.
///
/// Symplecticity is validated at construction; the `unchecked` constructor
/// exists for exploratory use, and downstream spectral operations then skip
/// the palindromic shortcuts.
class HomoclinicMatrix {
public:
    /// Validating constructor; throws NonSymplectic if the residual of
    /// pi^T J pi - J exceeds tol.
    static HomoclinicMatrix checked(const Mat4& pi, double tol = Tolerances{}.tol_spec);

    /// Bypass symplecticity validation.
    static HomoclinicMatrix unchecked(const Mat4& pi);

    const Mat4& pi() const { return pi_; }
    bool validated_symplectic() const { return validated_; }

    // block entries, a_ij etc. with i,j in {1,2}
    double a(int i, int j) const { return pi_(i - 1, j - 1); }
    double b(int i, int j) const { return pi_(i - 1, j + 1); }
    double c(int i, int j) const { return pi_(i + 1, j - 1); }
    double d(int i, int j) const { return pi_(i + 1, j + 1); }

private:
    explicit HomoclinicMatrix(const Mat4& pi, bool validated)
        : pi_(pi), validated_(validated) {}

    Mat4 pi_;
    bool validated_;
};

struct TransversalityReport {
    double delta = 0.0;
    bool transverse = false;
    bool strongly_transverse = false;
    double d22 = 0.0;
};

/// Transversality determinant Delta = c11*d22 - d12*c21 of the minor
/// [[c11, d12], [c21, d22]].
double transversality_delta(const HomoclinicMatrix& h);

/// Independent geometric test: true iff the 4x4 matrix with columns
/// (Pi e_phi, Pi e_u, e_phi, e_s) has numerical rank 4, i.e. the image of
/// the unstable tangent plane together with the stable tangent plane spans
/// the section. Threshold: tol_rank times the largest singular value.
bool is_transverse_rank_oracle(const HomoclinicMatrix& h, double tol_rank = Tolerances{}.tol_rank);

/// Singular values of the spanning matrix used by the rank oracle, in
/// descending order. Exposed so callers can reason about the tolerance band
/// around the rank decision.
std::array<double, 4> transversality_singular_values(const HomoclinicMatrix& h);

TransversalityReport transversality_report(const HomoclinicMatrix& h,
                                           double tol_rank = Tolerances{}.tol_rank);

/// True iff d22 != 0 (exact test on the stored entry): transversality of the
/// image of the unstable fiber direction e_u with the hyperplane {u = 0}.
bool fenichel_leaf_test(const HomoclinicMatrix& h);

/// Parse 16 whitespace-separated reals, row-major in basis order
/// (phi, s, rho, u). Throws Error on malformed input.
Mat4 parse_matrix16(const std::string& text);

} // namespace ttspec
