#pragma once

#include "ttspec/mat4.hpp"

namespace ttspec {

/// Matrix of the symplectic form d(rho)^d(phi) + ds^du in basis order
/// (phi, s, rho, u): J[rho][phi]=1, J[phi][rho]=-1, J[s][u]=1, J[u][s]=-1.
/// Satisfies J^2 = -I and J^T = -J.
const Mat4& symplectic_form();

/// True iff max-norm of (m^T J m - J) <= tol (absolute). tol must be > 0.
bool is_symplectic(const Mat4& m, double tol);

/// Residual max-norm of (m^T J m - J).
double symplectic_residual(const Mat4& m);

/// Exact inverse of a symplectic matrix: -J m^T J. Entry permutation with
/// sign flips only, so there is no rounding at all.
Mat4 symplectic_inverse(const Mat4& m);

} // namespace ttspec
