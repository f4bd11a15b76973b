#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ttspec/homoclinic.hpp"
#include "ttspec/mat4.hpp"

namespace ttspec {

// Elementary symplectic generators for the form d(rho)^d(phi) + ds^du.
// Each is exactly symplectic; random products of them make the test
// ensembles reproducible from a seed.
Mat4 shear_phi_from_rho(double a); // e_rho -> e_rho + a e_phi
Mat4 shear_rho_from_phi(double a); // e_phi -> e_phi + a e_rho
Mat4 shear_s_from_u(double a);     // e_u -> e_u + a e_s
Mat4 shear_u_from_s(double a);     // e_s -> e_s + a e_u
Mat4 scale_su(double t);           // diag(1, t, 1, 1/t)
Mat4 scale_phirho(double t);       // diag(1/t, 1, t, 1)
Mat4 mixer_phi_u(double a);        // flow of phi*u: s += a*phi, rho += a*u
Mat4 mixer_phi_s(double a);        // flow of phi*s: rho += a*s, u -= a*phi
Mat4 mixer_rho_u(double a);        // flow of rho*u: phi -= a*u, s += a*rho
Mat4 mixer_rho_s(double a);        // flow of rho*s: phi -= a*s, u -= a*rho
Mat4 swap_phirho();                // quarter turn in the (phi,rho) plane
Mat4 swap_su();                    // quarter turn in the (s,u) plane

struct EnsembleOptions {
    int factors_min = 4;
    int factors_max = 8;
    double coeff_max = 1.25;     // shear/mixer coefficients drawn from U(-m, m)
    double scale_log_max = 0.35; // scalings t = exp(U(-s, s))
    bool allow_swaps = true;
};

Mat4 random_symplectic(std::mt19937_64& rng, const EnsembleOptions& opts = {});

std::vector<Mat4> symplectic_ensemble(std::uint64_t seed, int count,
                                      const EnsembleOptions& opts = {});

/// Strongly transverse ensemble for the existence/asymptotics suites.
/// Rejection keeps |Delta| and |d22| bounded below and the entries bounded
/// above, so the asymptotic laws are observable within the precision guard.
/// max_b_correction, when positive, additionally bounds
/// |(|D| + a11 d22 - c21 b12) / Delta|, the first-order correction constant
/// of the subdominant eigenvalue law: the law's convergence within a finite
/// guard is only observable when that constant is bounded.
struct StrongTransverseOptions {
    EnsembleOptions base{};
    double min_delta = 0.5;
    double min_d22 = 0.5;
    double max_entry = 5.0;
    double max_b_correction = 0.0; // 0 = disabled
};

std::vector<HomoclinicMatrix> strongly_transverse_ensemble(
    std::uint64_t seed, int count, const StrongTransverseOptions& opts = {});

/// Symplectic matrices with d22 == 0 exactly and Delta >= min_delta > 0:
/// a random product is corrected by one (s,u) shear chosen to cancel the
/// d22 entry, and the residual rounding in that entry is zeroed (the
/// symplecticity residual this adds is O(eps * |Pi|^2)). Delta is kept
/// positive: with nu > 0 that is the sign for which the large-n spectrum is
/// a loxodromic quadruple; nu*Delta < 0 turns it real instead.
std::vector<HomoclinicMatrix> d22_zero_ensemble(std::uint64_t seed, int count,
                                                double min_delta = 0.5);

} // namespace ttspec
