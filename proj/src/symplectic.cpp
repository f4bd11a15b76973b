#include "ttspec/symplectic.hpp"

#include <stdexcept>

namespace ttspec {

const Mat4& symplectic_form() {
    static const Mat4 J = [] {
        Mat4 j;
        j(RHO, PHI) = 1.0;
        j(PHI, RHO) = -1.0;
        j(S, U) = 1.0;
        j(U, S) = -1.0;
        return j;
    }();
    return J;
}

double symplectic_residual(const Mat4& m) {
    const Mat4& J = symplectic_form();
    Mat4 r = mat_mul(transpose(m), mat_mul(J, m));
    return max_abs_diff(r, J);
}

bool is_symplectic(const Mat4& m, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("is_symplectic: tol must be > 0");
    if (!all_finite(m)) return false;
    return symplectic_residual(m) <= tol;
}

Mat4 symplectic_inverse(const Mat4& m) {
    const Mat4& J = symplectic_form();
    return mat_mul(negate(J), mat_mul(transpose(m), J));
}

} // namespace ttspec
