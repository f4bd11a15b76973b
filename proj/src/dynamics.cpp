#include "ttspec/dynamics.hpp"

#include <cmath>

#include "ttspec/errors.hpp"

namespace ttspec {

WindowConfig::WindowConfig(const Vec4& p_plus_, const Vec4& p_minus_, double radius_,
                           double mu_)
    : p_plus(p_plus_), p_minus(p_minus_), radius(radius_), mu(mu_) {
    if (p_plus.rho != 0.0 || p_plus.u != 0.0)
        throw Error("WindowConfig: p_plus must have rho = u = 0");
    if (p_minus.s != 0.0 || p_minus.rho != 0.0)
        throw Error("WindowConfig: p_minus must have s = rho = 0");
    if (!(radius > 0.0)) throw Error("WindowConfig: radius must be positive");
    if (!(mu > 0.0 && mu <= radius))
        throw Error("WindowConfig: window scale must satisfy 0 < mu <= radius");
}

double WindowConfig::default_radius(const Vec4& p_plus, const Vec4& p_minus) {
    return 0.1 * std::min(std::fabs(p_plus.s), std::fabs(p_minus.u));
}

bool in_box(const Vec4& center, double radius, const Vec4& z) {
    if (!(radius > 0.0)) throw Error("in_box: radius must be positive");
    return angular_distance(center.phi, z.phi) <= radius &&
           std::fabs(z.s - center.s) <= radius &&
           std::fabs(z.rho - center.rho) <= radius &&
           std::fabs(z.u - center.u) <= radius;
}

bool dn_membership(const WindowConfig& w, const LinearModelParams& p, const Vec4& z,
                   int n, PrecisionMode mode) {
    if (!in_box(w.p_plus, w.radius, z)) return false;
    Vec4 zn = apply_f_l_pow(p, z, n, mode);
    return in_box(w.p_minus, w.radius, zn);
}

namespace {

int resolve_n_max(const LinearModelParams& p, int n_max) {
    return n_max > 0 ? n_max : guard_max_n(p.lambda, PrecisionMode::Standard);
}

} // namespace

std::vector<int> dn_return_times(const WindowConfig& w, const LinearModelParams& p,
                                 const Vec4& z, int n_max) {
    std::vector<int> out;
    const int nm = resolve_n_max(p, n_max);
    if (!in_box(w.p_plus, w.radius, z)) return out;
    for (int n = 1; n <= nm; ++n)
        if (dn_membership(w, p, z, n)) out.push_back(n);
    return out;
}

TransverseImage transverse_map(const WindowConfig& w, const LinearModelParams& p,
                               const Vec4& z, int n_max) {
    const int nm = resolve_n_max(p, n_max);
    if (in_box(w.p_plus, w.radius, z)) {
        for (int n = 1; n <= nm; ++n) {
            if (dn_membership(w, p, z, n)) return {apply_f_l_pow(p, z, n), n};
        }
    }
    throw NotInDomain("transverse_map: no return time n <= n_max brings the point "
                      "from V+ into V-");
}

Vec4 homoclinic_map_l(const HomoclinicMatrix& h, const WindowConfig& w, const Vec4& z) {
    std::array<double, 4> d = displacement(z, w.p_minus);
    std::array<double, 4> img = mat_vec(h.pi(), d);
    return translate(w.p_plus, img);
}

bool in_window_domain(const std::array<double, 4>& c) {
    return std::fabs(c[PHI]) + std::fabs(c[S]) <= 1.0 &&
           std::fabs(c[RHO]) + std::fabs(c[U]) <= 1.0;
}

Vec4 window_to_section(const WindowConfig& w, const std::array<double, 4>& c) {
    return Vec4(w.p_plus.phi + w.mu * c[PHI], w.p_plus.s + w.mu * c[S],
                w.mu * c[RHO], w.mu * c[U]);
}

std::array<double, 4> section_to_window(const WindowConfig& w, const Vec4& z) {
    return {angular_diff(z.phi, w.p_plus.phi) / w.mu, (z.s - w.p_plus.s) / w.mu,
            z.rho / w.mu, z.u / w.mu};
}

WindowImage window_map_l(const HomoclinicMatrix& h, const WindowConfig& w,
                         const LinearModelParams& p, const std::array<double, 4>& c,
                         int n_max) {
    if (!in_window_domain(c))
        throw NotInDomain("window_map_l: point is outside the unit window box");
    Vec4 z = window_to_section(w, c);
    TransverseImage t = transverse_map(w, p, z, n_max);
    Vec4 g = homoclinic_map_l(h, w, t.image);
    return {section_to_window(w, g), t.n};
}

std::vector<ReturnRecord> itinerary(const HomoclinicMatrix& h, const WindowConfig& w,
                                    const LinearModelParams& p,
                                    const std::array<double, 4>& c, int k, int n_max) {
    std::vector<ReturnRecord> out;
    std::array<double, 4> cur = c;
    for (int step = 0; step < k; ++step) {
        if (!in_window_domain(cur)) break;
        Vec4 entry = window_to_section(w, cur);
        WindowImage img;
        try {
            img = window_map_l(h, w, p, cur, n_max);
        } catch (const NotInDomain&) {
            break;
        }
        out.push_back({img.n, entry, apply_f_l_pow(p, entry, img.n)});
        cur = img.c;
    }
    return out;
}

double measured_u_expansion(const WindowConfig& w,
                            const std::vector<ReturnRecord>& records) {
    if (records.size() < 3) return 0.0;
    std::vector<double> us;
    us.reserve(records.size());
    for (const ReturnRecord& r : records) us.push_back(section_to_window(w, r.entry_point)[U]);
    double logsum = 0.0;
    int cnt = 0;
    for (size_t i = 0; i + 2 < us.size(); ++i) {
        double d0 = us[i + 1] - us[i];
        double d1 = us[i + 2] - us[i + 1];
        if (d0 != 0.0 && d1 != 0.0) {
            logsum += std::log(std::fabs(d1 / d0));
            ++cnt;
        }
    }
    return cnt > 0 ? std::exp(logsum / cnt) : 0.0;
}

Mat4 window_map_jacobian_fd(const HomoclinicMatrix& h, const WindowConfig& w,
                            const LinearModelParams& p, const std::array<double, 4>& c,
                            double step, int n_max) {
    Mat4 jac;
    int n_ref = -1;
    for (int j = 0; j < 4; ++j) {
        std::array<double, 4> cp = c, cm = c;
        cp[j] += step;
        cm[j] -= step;
        WindowImage up = window_map_l(h, w, p, cp, n_max);
        WindowImage dn = window_map_l(h, w, p, cm, n_max);
        if (n_ref < 0) n_ref = up.n;
        if (up.n != n_ref || dn.n != n_ref)
            throw NotInDomain("window_map_jacobian_fd: stencil crosses a return-time "
                              "component boundary");
        for (int i = 0; i < 4; ++i) jac(i, j) = (up.c[i] - dn.c[i]) / (2.0 * step);
    }
    return jac;
}

} // namespace ttspec
