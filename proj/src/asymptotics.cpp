#include "ttspec/asymptotics.hpp"

#include <cmath>
#include <sstream>

#include "ttspec/errors.hpp"

namespace ttspec {

AsymptoticsTable asymptotic_table(const HomoclinicMatrix& h, const LinearModelParams& p,
                                  const std::vector<int>& n_list, const RunConfig& cfg) {
    TransversalityReport tr = transversality_report(h, cfg.tol.tol_rank);
    if (!p.with_torsion()) throw NotWithTorsion("asymptotic_table: nu == 0");
    if (!tr.strongly_transverse)
        throw NotStronglyTransverse(
            "asymptotic_table: input is not strongly transverse (needs Delta != 0 "
            "and d22 != 0)");

    AsymptoticsTable out;
    out.delta = tr.delta;
    out.d22 = tr.d22;

    for (int n : n_list) {
        SpectrumReport r = full_report(h, p, n, cfg);
        if (r.classification != Classification::HyperbolicReal) {
            std::ostringstream os;
            os << "asymptotic_table: spectrum at n=" << n << " classifies "
               << to_string(r.classification) << ", not HyperbolicReal";
            throw NotYetHyperbolic(os.str());
        }
        AsymptoticsRow row;
        row.n = n;
        row.classification = r.classification;
        // eigenvalue order: [big(S2=dominant), recip, big(S1), recip]
        row.x2 = r.eigenvalues[0].real();
        row.x1 = r.eigenvalues[2].real();
        row.x2_model = tr.d22 * std::pow(p.lambda, -static_cast<double>(n));
        row.x1_model = static_cast<double>(n) * p.nu * tr.delta / tr.d22;
        row.ratio2 = std::fabs(row.x2) / std::fabs(row.x2_model);
        row.ratio1 = std::fabs(row.x1) / std::fabs(row.x1_model);
        row.sign1 = (row.x1 * row.x1_model > 0.0) ? 1 : -1;
        out.rows.push_back(row);
    }
    return out;
}

HomoclinicMatrix special_case_matrix(double delta) {
    Mat4 pi = Mat4::identity();
    pi(RHO, PHI) = delta;
    return HomoclinicMatrix::checked(pi);
}

namespace {

PalindromicQuartic expand_two_factors(double s_a, double s_b) {
    // (x^2 - s_a x + 1)(x^2 - s_b x + 1)
    return {-(s_a + s_b), 2.0 + s_a * s_b};
}

} // namespace

SpecialCaseFactors special_case_factor(const SpecialCaseParams& sc, const RunConfig& cfg) {
    check_guard(sc.p.lambda, sc.n, cfg.precision);
    const double nn = static_cast<double>(sc.n);
    SpecialCaseFactors f;
    f.s_torsion = sc.delta * nn * sc.p.nu + 2.0;
    f.s_radial = std::pow(sc.p.lambda, nn) + std::pow(sc.p.lambda, -nn);
    f.expanded = expand_two_factors(f.s_torsion, f.s_radial);

    HomoclinicMatrix h = special_case_matrix(sc.delta);
    Mat4 m = transition_matrix(h, sc.p, sc.n, cfg.precision);
    PalindromicQuartic oracle = trace_coeffs(m, cfg.tol);
    double gap = coeff_relative_gap(f.expanded, oracle);
    if (gap > 1e-9) {
        std::ostringstream os;
        os << "special_case_factor: factor product disagrees with the trace oracle "
           << "(relative gap " << gap << " at delta=" << sc.delta << ", n=" << sc.n << ")";
        throw FactorizationMismatch(os.str());
    }
    return f;
}

double special_case_variant_exponent_gap(const SpecialCaseParams& sc) {
    const double nn = static_cast<double>(sc.n);
    const double s_torsion = sc.delta * nn * sc.p.nu + 2.0;
    const double s_variant =
        std::pow(sc.p.lambda, 2.0 * nn) + std::pow(sc.p.lambda, -nn);
    PalindromicQuartic variant = expand_two_factors(s_torsion, s_variant);

    HomoclinicMatrix h = special_case_matrix(sc.delta);
    Mat4 m = transition_matrix(h, sc.p, sc.n);
    PalindromicQuartic oracle = trace_coeffs(m);
    return coeff_relative_gap(variant, oracle);
}

bool special_case_hyperbolicity(const SpecialCaseParams& sc, const RunConfig& cfg) {
    check_guard(sc.p.lambda, sc.n, cfg.precision);
    if (sc.delta == 0.0 || sc.p.nu == 0.0) return false;
    const double nn = static_cast<double>(sc.n);
    const double s_torsion = sc.delta * nn * sc.p.nu + 2.0;
    const double s_radial = std::pow(sc.p.lambda, nn) + std::pow(sc.p.lambda, -nn);
    return std::fabs(s_torsion) > 2.0 + cfg.tol.tol_hyp &&
           std::fabs(s_radial) > 2.0 + cfg.tol.tol_hyp;
}

} // namespace ttspec
