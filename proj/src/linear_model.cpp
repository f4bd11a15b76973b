#include "ttspec/linear_model.hpp"

#include <cmath>

#include "ttspec/errors.hpp"

namespace ttspec {

LinearModelParams::LinearModelParams(double omega_, double nu_, double lambda_)
    : omega(omega_), nu(nu_), lambda(lambda_) {
    if (!std::isfinite(omega) || !std::isfinite(nu) || !std::isfinite(lambda))
        throw NonFinite("LinearModelParams: non-finite parameter");
    if (!(lambda > 0.0 && lambda < 1.0))
        throw Error("LinearModelParams: lambda must satisfy 0 < lambda < 1");
}

Vec4 apply_f_l(const LinearModelParams& p, const Vec4& z) {
    return Vec4(z.phi + p.omega + p.nu * z.rho, p.lambda * z.s, z.rho,
                z.u / p.lambda);
}

Vec4 apply_f_l_pow(const LinearModelParams& p, const Vec4& z, int n, PrecisionMode mode) {
    check_guard(p.lambda, n, mode);
    const double nn = static_cast<double>(n);
    return Vec4(z.phi + nn * (p.omega + p.nu * z.rho),
                std::pow(p.lambda, nn) * z.s, z.rho,
                std::pow(p.lambda, -nn) * z.u);
}

Mat4 d_f_l(const LinearModelParams& p) {
    Mat4 r = Mat4::identity();
    r(PHI, RHO) = p.nu;
    r(S, S) = p.lambda;
    r(U, U) = 1.0 / p.lambda;
    return r;
}

Mat4 d_f_l_pow(const LinearModelParams& p, int n, PrecisionMode mode) {
    check_guard(p.lambda, n, mode);
    const double nn = static_cast<double>(n);
    return d_f_l_pow_t<double>(p.nu, std::pow(p.lambda, nn), std::pow(p.lambda, -nn), n);
}

} // namespace ttspec
