#pragma once

#include <array>
#include <cmath>

#include "ttspec/coords.hpp"

namespace ttspec {

/// Point of the Poincare section in coordinates (phi, s, rho, u).
/// phi is an angle; construction and arithmetic keep it in [0, 2*pi).
struct Vec4 {
    double phi = 0.0; // angle on the torus
    double s = 0.0;   // stable coordinate
    double rho = 0.0; // action coordinate
    double u = 0.0;   // unstable coordinate

    Vec4() = default;
    Vec4(double phi_, double s_, double rho_, double u_)
        : phi(wrap_angle(phi_)), s(s_), rho(rho_), u(u_) {}

    double operator[](int i) const {
        switch (i) {
        case PHI: return phi;
        case S: return s;
        case RHO: return rho;
        default: return u;
        }
    }

    bool finite() const {
        return std::isfinite(phi) && std::isfinite(s) && std::isfinite(rho) &&
               std::isfinite(u);
    }
};

/// Componentwise displacement between two section points; the phi component
/// is the signed angular difference in (-pi, pi].
inline std::array<double, 4> displacement(const Vec4& a, const Vec4& b) {
    return {angular_diff(a.phi, b.phi), a.s - b.s, a.rho - b.rho, a.u - b.u};
}

inline Vec4 translate(const Vec4& p, const std::array<double, 4>& d) {
    return Vec4(p.phi + d[PHI], p.s + d[S], p.rho + d[RHO], p.u + d[U]);
}

} // namespace ttspec
