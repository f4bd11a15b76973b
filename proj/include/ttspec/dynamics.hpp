#pragma once

#include <vector>

#include "ttspec/homoclinic.hpp"
#include "ttspec/linear_model.hpp"
#include "ttspec/vec4.hpp"

namespace ttspec {

/// Neighborhood geometry around the homoclinic points. V+ and V- are closed
/// coordinate boxes of one per-coordinate half-width; the window W_mu maps
/// the unit box C (two 1-norm balls on the (phi,s) and (rho,u) pairs) into
/// V+ by c -> mu*c + p_plus.
struct WindowConfig {
    Vec4 p_plus;   // first stable-side intersection: rho = u = 0
    Vec4 p_minus;  // last unstable-side intersection: s = rho = 0
    double radius; // per-coordinate half-width of V+ and V-
    double mu;     // window scale, 0 < mu <= radius

    WindowConfig(const Vec4& p_plus_, const Vec4& p_minus_, double radius_, double mu_);

    static double default_radius(const Vec4& p_plus, const Vec4& p_minus);
};

/// True iff |z - center| <= radius per coordinate, the phi difference taken
/// as the shortest angular distance.
bool in_box(const Vec4& center, double radius, const Vec4& z);

/// z in V+ and its closed-form n-th image in V-: phi_n = phi + n(omega +
/// nu rho), s_n = lambda^n s, rho_n = rho, u_n = lambda^-n u.
bool dn_membership(const WindowConfig& w, const LinearModelParams& p, const Vec4& z,
                   int n, PrecisionMode mode = PrecisionMode::Standard);

/// All n in [1, n_max] with dn_membership; n_max = 0 means the precision
/// guard for the ambient lambda.
std::vector<int> dn_return_times(const WindowConfig& w, const LinearModelParams& p,
                                 const Vec4& z, int n_max = 0);

struct TransverseImage {
    Vec4 image;
    int n = 0;
};

/// Image under the smallest qualifying return time (a point may lie in
/// several D_n; determinism wants a rule). Throws NotInDomain when no
/// n <= n_max qualifies.
TransverseImage transverse_map(const WindowConfig& w, const LinearModelParams& p,
                               const Vec4& z, int n_max = 0);

/// Affine homoclinic correspondence p+ + Pi (z - p-), phi wrapped.
Vec4 homoclinic_map_l(const HomoclinicMatrix& h, const WindowConfig& w, const Vec4& z);

bool in_window_domain(const std::array<double, 4>& c);
Vec4 window_to_section(const WindowConfig& w, const std::array<double, 4>& c);
std::array<double, 4> section_to_window(const WindowConfig& w, const Vec4& z);

struct WindowImage {
    std::array<double, 4> c{}; // window coordinates, possibly outside C
    int n = 0;                 // return time used
};

/// W_mu^-1 o Gamma_l o psi_l o W_mu. Throws NotInDomain if c is outside C
/// or the transverse map has no qualifying return time.
WindowImage window_map_l(const HomoclinicMatrix& h, const WindowConfig& w,
                         const LinearModelParams& p, const std::array<double, 4>& c,
                         int n_max = 0);

struct ReturnRecord {
    int n = 0;
    Vec4 entry_point; // point in V+ fed to the transverse map
    Vec4 exit_point;  // its n-th image in V-
};

/// Up to k successive window returns starting from c; stops at the first
/// escape (NotInDomain or image outside C). The truncated list is the
/// signal, not an error.
std::vector<ReturnRecord> itinerary(const HomoclinicMatrix& h, const WindowConfig& w,
                                    const LinearModelParams& p,
                                    const std::array<double, 4>& c, int k, int n_max = 0);

/// Central-difference Jacobian of window_map_l at c with step h in window
/// coordinates. All 2*4 evaluations must share one return time; throws
/// NotInDomain otherwise (the point sits too close to a component boundary).
Mat4 window_map_jacobian_fd(const HomoclinicMatrix& h, const WindowConfig& w,
                            const LinearModelParams& p, const std::array<double, 4>& c,
                            double step, int n_max = 0);

/// Per-return expansion of the u window coordinate along an itinerary,
/// estimated as the geometric mean of ratios of successive first
/// differences (the fixed point of the affine branch cancels out of the
/// differences). Returns 0 when fewer than three returns are available.
double measured_u_expansion(const WindowConfig& w, const std::vector<ReturnRecord>& records);

} // namespace ttspec
