#pragma once

#include "ttspec/mat4.hpp"
#include "ttspec/tolerances.hpp"
#include "ttspec/vec4.hpp"

namespace ttspec {

/// Parameters of the linearized Poincare return map near the torus:
///   f_l(phi, s, rho, u) = (phi + omega + nu*rho, lambda*s, rho, u/lambda).
struct LinearModelParams {
    double omega = 0.0;  // rotation per return; never enters the differential
    double nu = 0.0;     // torsion coefficient coupling rho to the rotation rate
    double lambda = 0.5; // contraction rate, 0 < lambda < 1

    LinearModelParams() = default;
    LinearModelParams(double omega_, double nu_, double lambda_);

    /// Torsion test is exact (nu is a model parameter, not a measurement).
    bool with_torsion() const { return nu != 0.0; }
};

Vec4 apply_f_l(const LinearModelParams& p, const Vec4& z);

/// Closed-form n-th image of f_l: (phi + n*(omega + nu*rho), lambda^n s,
/// rho, lambda^-n u). Mode-guarded against lambda^-n overflow.
Vec4 apply_f_l_pow(const LinearModelParams& p, const Vec4& z, int n,
                   PrecisionMode mode = PrecisionMode::Standard);

/// Differential of f_l in basis (phi, s, rho, u):
///   rows (phi): [1,0,nu,0]; (s): [0,lambda,0,0]; (rho): [0,0,1,0];
///   (u): [0,0,0,1/lambda].
Mat4 d_f_l(const LinearModelParams& p);

/// Closed-form n-th power of the differential: the shear entry becomes n*nu
/// and the (s,u) scalings become lambda^(+-n).
Mat4 d_f_l_pow(const LinearModelParams& p, int n,
               PrecisionMode mode = PrecisionMode::Standard);

template <class T>
Mat4T<T> d_f_l_pow_t(const T& nu, const T& lambda_n, const T& lambda_mn, int n) {
    Mat4T<T> r = Mat4T<T>::identity();
    r(PHI, RHO) = T(n) * nu;
    r(S, S) = lambda_n;
    r(U, U) = lambda_mn;
    return r;
}

} // namespace ttspec
