#include "ttspec/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <thread>

#include <Eigen/Dense>

#include "ttspec/asymptotics.hpp"
#include "ttspec/dynamics.hpp"
#include "ttspec/ensemble.hpp"
#include "ttspec/errors.hpp"
#include "ttspec/precision.hpp"
#include "ttspec/quartic_oracle.hpp"
#include "ttspec/symplectic.hpp"
#include "ttspec/transition.hpp"

namespace ttspec {

namespace {

struct Checker {
    long checks = 0;
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& msg) {
        ++checks;
        if (!cond && ok) {
            ok = false;
            detail = msg;
        }
    }
    template <class... Args>
    void requiref(bool cond, Args&&... parts) {
        ++checks;
        if (!cond && ok) {
            ok = false;
            std::ostringstream os;
            (os << ... << parts);
            detail = os.str();
        }
    }
};

std::vector<double> suite_lambdas() { return {0.3, 0.5, 0.8}; }

StrongTransverseOptions existence_options() {
    StrongTransverseOptions o;
    o.base.factors_min = 3;
    o.base.factors_max = 5;
    o.base.coeff_max = 0.6;
    o.base.scale_log_max = 0.2;
    o.min_delta = 0.5;
    o.min_d22 = 0.5;
    o.max_entry = 3.0;
    o.max_b_correction = 12.0;
    return o;
}

constexpr double kExistenceLambda = 0.8;

// ---------------------------------------------------------------- suites

SuiteResult suite_symplectic_core(const RunConfig& cfg) {
    Checker c;
    const Mat4& J = symplectic_form();
    c.require(max_abs_diff(mat_mul(J, J), negate(Mat4::identity())) == 0.0,
              "J^2 != -I");
    c.require(max_abs_diff(transpose(J), negate(J)) == 0.0, "J^T != -J");

    auto ensemble = symplectic_ensemble(cfg.seed + 11, 300);
    for (const Mat4& m : ensemble) {
        // construction validates symplecticity at tol_spec
        HomoclinicMatrix h = HomoclinicMatrix::checked(m, cfg.tol.tol_spec);
        Spectrum sp = dense_eigenvalues(h.pi());
        // reciprocal pairing: every eigenvalue has a partner with z*z' ~ 1
        for (int i = 0; i < 4; ++i) {
            double best = 1e300;
            for (int j = 0; j < 4; ++j)
                best = std::min(best, std::abs(sp.eigenvalues[i] * sp.eigenvalues[j] - 1.0));
            c.requiref(best <= 1e-8, "reciprocal pairing residual ", best);
        }
        CharPoly cp = char_poly(m);
        double scale = std::max({1.0, std::fabs(cp.c3), std::fabs(cp.c2)});
        c.requiref(std::fabs(cp.c1 - cp.c3) <= 1e-8 * scale &&
                       std::fabs(cp.c0 - 1.0) <= 1e-8 * scale,
                   "characteristic polynomial not palindromic");
        Mat4 inv = symplectic_inverse(m);
        c.requiref(max_abs_diff(mat_mul(m, inv), Mat4::identity()) <= 1e-10 * std::max(1.0, norm_inf(m)),
                   "symplectic inverse residual too large");
        if (!c.ok) break;
    }
    return {"symplectic_core", c.ok, c.checks, 0.0, c.detail};
}

// coefficient-formula verification: closed form vs trace oracle over the
// seeded ensemble, all n up to the guard, three contraction rates
SuiteResult suite_coefficients(const RunConfig& cfg) {
    Checker c;
    auto ensemble = symplectic_ensemble(cfg.seed + 23, 1000);
    double worst = 0.0;
    for (double lambda : suite_lambdas()) {
        const int guard = guard_max_n(lambda, PrecisionMode::Standard);
        for (const Mat4& pi : ensemble) {
            HomoclinicMatrix h = HomoclinicMatrix::checked(pi, cfg.tol.tol_spec);
            for (int n = 1; n <= guard; ++n) {
                LinearModelParams p(0.0, 1.0, lambda);
                PalindromicQuartic closed = closed_form_coeffs(h, p, n);
                PalindromicQuartic traced =
                    trace_coeffs(transition_matrix(h, p, n), cfg.tol);
                double gap = coeff_relative_gap(closed, traced);
                worst = std::max(worst, gap);
                c.requiref(gap <= 1e-9, "coefficient gap ", gap, " at lambda=", lambda,
                           " n=", n);
                if (!c.ok) return {"coefficients", c.ok, c.checks, 0.0, c.detail};
            }
        }
    }
    std::ostringstream os;
    os << "worst relative gap " << worst;
    return {"coefficients", c.ok, c.checks, 0.0, os.str()};
}

// determinant criterion vs 4x4 rank oracle, random ensemble plus hand-built
// near-degenerate Delta values
SuiteResult suite_lemma1(const RunConfig& cfg) {
    Checker c;
    auto run_case = [&](const HomoclinicMatrix& h) {
        double delta = transversality_delta(h);
        bool det_test = std::fabs(delta) > cfg.tol.tol_rank;
        bool rank_test = is_transverse_rank_oracle(h, cfg.tol.tol_rank);
        if (det_test == rank_test) {
            ++c.checks;
            return;
        }
        // disagreement is only allowed near the rank threshold: the oracle
        // flips where sigma_min = tol * sigma_max, i.e. |Delta| = tol *
        // sigma1^2 sigma2 sigma3
        auto s = transversality_singular_values(h);
        double crossover = cfg.tol.tol_rank * s[0] * s[0] * s[1] * s[2];
        c.requiref(std::fabs(delta) >= crossover / 100.0 &&
                       std::fabs(delta) <= crossover * 100.0,
                   "det test and rank oracle disagree outside the tolerance band: "
                   "Delta=", delta, " crossover=", crossover);
    };

    auto ensemble = symplectic_ensemble(cfg.seed + 31, 1000);
    for (const Mat4& pi : ensemble) run_case(HomoclinicMatrix::checked(pi, cfg.tol.tol_spec));
    for (int k = 0; k < 10; ++k) {
        // |Delta| log-spaced across [1e-12, 1e-6]
        double delta = std::pow(10.0, -12.0 + 6.0 * k / 9.0);
        run_case(special_case_matrix(delta));
    }
    return {"lemma1", c.ok, c.checks, 0.0, c.detail};
}

// hyperbolicity sets in for every strongly transverse matrix with torsion
SuiteResult suite_theorem2_existence(const RunConfig& cfg) {
    Checker c;
    auto ensemble = strongly_transverse_ensemble(cfg.seed + 41, 100, existence_options());
    LinearModelParams p(0.0, 1.0, kExistenceLambda);
    const int guard = guard_max_n(p.lambda, PrecisionMode::Standard);
    int worst_onset = 0;
    for (const HomoclinicMatrix& h : ensemble) {
        int n0 = empirical_hyperbolic_onset(h, p, guard, Classification::HyperbolicReal, cfg);
        c.requiref(n0 >= 1, "no HyperbolicReal tail within the guard (Delta=",
                   transversality_delta(h), ")");
        // at least a handful of hyperbolic samples for the asymptotics suite
        c.requiref(n0 == 0 || n0 <= guard - 8, "onset ", n0, " too close to guard ", guard);
        worst_onset = std::max(worst_onset, n0);
        if (!c.ok) break;
    }
    std::ostringstream os;
    os << "largest empirical N0 = " << worst_onset << " (guard " << guard << ")";
    return {"theorem2_existence", c.ok, c.checks, 0.0, c.ok ? os.str() : c.detail};
}

// eigenvalue growth laws: |x2| ~ |d22| lambda^-n and |x1| ~ n |nu Delta / d22|
SuiteResult suite_theorem2_asymptotics(const RunConfig& cfg) {
    Checker c;
    auto ensemble = strongly_transverse_ensemble(cfg.seed + 41, 100, existence_options());
    LinearModelParams p(0.0, 1.0, kExistenceLambda);
    const int guard = guard_max_n(p.lambda, PrecisionMode::Standard);
    int sign_agree = 0, sign_total = 0;
    double worst_r1 = 0.0, worst_r2 = 0.0;
    for (const HomoclinicMatrix& h : ensemble) {
        int n0 = empirical_hyperbolic_onset(h, p, guard, Classification::HyperbolicReal, cfg);
        c.require(n0 >= 1 && n0 <= guard - 8, "onset out of range for sampling");
        if (!c.ok) break;
        std::vector<int> ns;
        for (int i = 0; i <= 5; ++i)
            ns.push_back(n0 + ((guard - n0) * i) / 5);
        ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
        AsymptoticsTable t = asymptotic_table(h, p, ns, cfg);

        std::vector<double> e1, e2;
        for (const AsymptoticsRow& r : t.rows) {
            e1.push_back(std::fabs(r.ratio1 - 1.0));
            e2.push_back(std::fabs(r.ratio2 - 1.0));
            sign_total += 1;
            sign_agree += (r.sign1 > 0) ? 1 : 0;
        }
        // strict improvement first-to-last plus a windowed trend test (the
        // deviation |ratio1 - 1| is |C1/n - C2/n^2|-shaped and may dip
        // through zero mid-range, so per-step monotonicity is not claimed);
        // once the deviation sits at rounding scale ordering is noise
        const double kNoiseFloor = 1e-12;
        auto trend = [&](const std::vector<double>& e, const char* which) {
            c.requiref(e.back() < e.front() || e.back() <= kNoiseFloor, which,
                       ": no strict improvement from first hyperbolic n to guard");
            size_t half = e.size() / 2;
            double first_half = *std::max_element(e.begin(), e.begin() + half);
            double second_half = *std::max_element(e.begin() + half, e.end());
            c.requiref(second_half < first_half || second_half <= kNoiseFloor, which,
                       ": trend reversal across sample halves");
        };
        trend(e1, "ratio1");
        trend(e2, "ratio2");
        c.requiref(e2.back() <= 0.05, "|x2| law misses 5% at guard: ", e2.back());
        c.requiref(e1.back() <= 0.15, "|x1| law misses 15% at guard: ", e1.back());
        worst_r1 = std::max(worst_r1, e1.back());
        worst_r2 = std::max(worst_r2, e2.back());
        if (!c.ok) break;
    }
    std::ostringstream os;
    os << "at guard: worst |ratio1-1| = " << worst_r1 << ", worst |ratio2-1| = "
       << worst_r2 << "; sign(x1) matches n*nu*Delta/d22 in " << sign_agree << "/"
       << sign_total << " rows (reported, not asserted)";
    return {"theorem2_asymptotics", c.ok, c.checks, 0.0, c.ok ? os.str() : c.detail};
}

// d22 = 0, Delta != 0 branch: loxodromic quadruple for large n
SuiteResult suite_d22_branch(const RunConfig& cfg) {
    Checker c;
    auto ensemble = d22_zero_ensemble(cfg.seed + 53, 20);
    LinearModelParams p(0.0, 1.0, 0.5);
    const int guard = guard_max_n(p.lambda, PrecisionMode::Standard);
    int worst_onset = 0;
    for (const HomoclinicMatrix& h : ensemble) {
        c.require(h.d(2, 2) == 0.0, "ensemble matrix lost exact d22 = 0");
        int n1 = empirical_hyperbolic_onset(h, p, guard, Classification::HyperbolicComplex, cfg);
        c.requiref(n1 >= 1, "no HyperbolicComplex tail within the guard");
        if (!c.ok) break;
        for (int n = n1; n <= guard; ++n) {
            SpectrumReport r = full_report(h, p, n, cfg);
            c.require(r.classification == Classification::HyperbolicComplex &&
                          r.min_unit_circle_distance > 1e-6,
                      "complex-branch spectrum touches the unit circle");
            if (!c.ok) break;
        }
        worst_onset = std::max(worst_onset, n1);
        if (!c.ok) break;
    }
    std::ostringstream os;
    os << "largest complex-branch onset = " << worst_onset;
    return {"d22_branch", c.ok, c.checks, 0.0, c.ok ? os.str() : c.detail};
}

// shear-model if-and-only-if sweep plus the desk-scale exact reproduction
SuiteResult suite_theorem3_iff(const RunConfig& cfg) {
    Checker c;
    const double lambda = 0.5;
    for (double delta : {-1.0, 0.0, 1.0}) {
        for (double nu : {-1.0, 0.0, 1.0}) {
            LinearModelParams p(0.0, nu, lambda);
            HomoclinicMatrix h = special_case_matrix(delta);
            bool seen_hyperbolic = false;
            for (int n = 1; n <= 40; ++n) {
                SpectrumReport r = full_report(h, p, n, cfg);
                bool hyp = special_case_hyperbolicity({delta, p, n}, cfg);
                c.requiref(hyp == (r.classification == Classification::HyperbolicReal),
                           "closed-form hyperbolicity test disagrees with the "
                           "classifier at delta=", delta, " nu=", nu, " n=", n);
                seen_hyperbolic = seen_hyperbolic || hyp;
                if (delta == 0.0 || nu == 0.0) {
                    double dist_to_one = 1e300;
                    for (const cplx& z : r.eigenvalues)
                        dist_to_one = std::min(dist_to_one, std::abs(z - 1.0));
                    c.requiref(dist_to_one <= 1e-10,
                               "degenerate cell lost the eigenvalue at +1: distance ",
                               dist_to_one, " at n=", n);
                }
                if (!c.ok) return {"theorem3_iff", c.ok, c.checks, 0.0, c.detail};
            }
            c.requiref(seen_hyperbolic == (delta * nu != 0.0),
                       "hyperbolic-for-large-n does not match delta*nu != 0 at delta=",
                       delta, " nu=", nu);
        }
    }

    // desk-scale reproduction at delta=1, nu=1, lambda=0.5, n=2
    LinearModelParams p(0.0, 1.0, lambda);
    SpectrumReport r = full_report(special_case_matrix(1.0), p, 2, cfg);
    c.requiref(r.a_n == -8.25 && r.b_n == 19.0, "quartic coefficients differ: A=",
               r.a_n, " B=", r.b_n);
    std::array<cplx, 4> expect = {cplx(4.0), cplx(0.25), cplx(2.0 + std::sqrt(3.0)),
                                  cplx(2.0 - std::sqrt(3.0))};
    c.requiref(greedy_chordal_match(r.eigenvalues, expect) <= 1e-10,
               "eigenvalues differ from {4, 0.25, 2 +- sqrt(3)}");
    Spectrum qr = dense_eigenvalues(transition_matrix(special_case_matrix(1.0), p, 2));
    c.requiref(greedy_chordal_match(qr.eigenvalues, expect) <= 1e-10,
               "dense oracle differs from {4, 0.25, 2 +- sqrt(3)}");
    c.require(r.classification == Classification::HyperbolicReal,
              "desk-scale case must classify HyperbolicReal");
    return {"theorem3_iff", c.ok, c.checks, 0.0, c.detail};
}

// factor product against the trace oracle, and rejection of the variant
// radial exponent. The variant differs from the correct coefficient by
// lambda^n (lambda^n - 1), nonzero for every n but below double rounding
// near the guard, so the every-point rejection is arbitrated in exact
// rational arithmetic and the double-precision gap is asserted wherever it
// is measurable.
SuiteResult suite_factorization(const RunConfig& cfg) {
    Checker c;
    long variant_rejected_exact = 0, variant_rejected_double = 0, total = 0;
    for (double delta : {-3.0, -1.0, 1.0, 3.0}) {
        for (double lambda : suite_lambdas()) {
            LinearModelParams p(0.0, 1.0, lambda);
            const int guard = guard_max_n(lambda, PrecisionMode::Standard);
            for (int n = 1; n <= guard; ++n) {
                ++total;
                SpecialCaseParams sc{delta, p, n};
                try {
                    special_case_factor(sc, cfg); // throws on >1e-9 gap
                    ++c.checks;
                } catch (const FactorizationMismatch& e) {
                    c.require(false, e.what());
                }
                // the full rational char-poly oracle gets expensive as the
                // lambda^-n fractions grow; past n = 16 the exact rejection
                // reduces to the coefficient difference lambda^n(lambda^n-1),
                // which only needs two rational powers
                if (n <= 16) {
                    SpecialCaseExactCheck exact = special_case_exact_check(delta, p, n);
                    c.requiref(exact.correct_matches,
                               "exact factor product differs from the exact "
                               "characteristic polynomial at delta=", delta,
                               " lambda=", lambda, " n=", n);
                    c.requiref(!exact.variant_matches,
                               "variant radial exponent was not rejected exactly at "
                               "delta=", delta, " lambda=", lambda, " n=", n);
                    if (!exact.variant_matches) ++variant_rejected_exact;
                } else {
                    c.require(special_case_variant_differs_exactly(p.lambda, n),
                              "variant radial coefficient coincides exactly");
                    ++variant_rejected_exact;
                }

                double gap = special_case_variant_exponent_gap(sc);
                double lam_n = std::pow(lambda, n);
                double scale = std::max(1.0, std::pow(lambda, -static_cast<double>(n)) *
                                                 (std::fabs(delta) * n + 2.0));
                bool measurable = lam_n * (1.0 - lam_n) > 1e-7 * scale;
                if (measurable)
                    c.requiref(gap > 1e-9, "variant gap ", gap,
                               " not above 1e-9 in the measurable regime at delta=",
                               delta, " lambda=", lambda, " n=", n);
                if (gap > 1e-9) ++variant_rejected_double;
                if (!c.ok) return {"factorization", c.ok, c.checks, 0.0, c.detail};
            }
        }
    }
    std::ostringstream os;
    os << "correct radial coefficient lambda^n+lambda^-n matches exactly at all "
       << total << " points; variant lambda^(2n)+lambda^-n rejected exactly at all "
       << variant_rejected_exact << ", above the 1e-9 double threshold at "
       << variant_rejected_double;
    return {"factorization", c.ok, c.checks, 0.0, c.ok ? os.str() : c.detail};
}

// S-reduction vs dense oracle across the ensembles, including the circle
// boundary |S| <= 2
SuiteResult suite_solver_equivalence(const RunConfig& cfg) {
    Checker c;
    const double kTol = 1e-6;

    // full_report asserts the palindromic-vs-dense chordal match at 1e-6
    // internally and throws on failure; this suite drives it across the
    // ensembles and records the worst residual it saw
    double worst_seen = 0.0;
    auto check_triple = [&](const HomoclinicMatrix& h, const LinearModelParams& p, int n) {
        try {
            SpectrumReport r = full_report(h, p, n, cfg);
            worst_seen = std::max(worst_seen, r.oracle_residuals.dense_chordal);
            ++c.checks;
        } catch (const OracleMismatch& e) {
            c.require(false, e.what());
        }
    };

    // random ensemble across all guarded n
    auto ensemble = symplectic_ensemble(cfg.seed + 23, 1000);
    for (double lambda : suite_lambdas()) {
        const int guard = guard_max_n(lambda, PrecisionMode::Standard);
        LinearModelParams p(0.0, 1.0, lambda);
        for (const Mat4& pi : ensemble) {
            HomoclinicMatrix h = HomoclinicMatrix::checked(pi, cfg.tol.tol_spec);
            for (int n = 1; n <= guard; ++n) {
                check_triple(h, p, n);
                if (!c.ok) return {"solver_equivalence", c.ok, c.checks, 0.0, c.detail};
            }
        }
    }

    // circle-boundary families: degenerate and sign-flipped shear cells keep
    // |S| <= 2 pairs (elliptic and parabolic) in the mix
    for (double delta : {0.0, 1.0}) {
        for (double nu : {-1.0, 0.0, 1.0}) {
            LinearModelParams p(0.0, nu, 0.5);
            HomoclinicMatrix h = special_case_matrix(delta);
            for (int n = 1; n <= 40; ++n) {
                check_triple(h, p, n);
                if (!c.ok) return {"solver_equivalence", c.ok, c.checks, 0.0, c.detail};
            }
        }
    }

    // synthetic |S| <= 2 quartics against the multiprecision root oracle
    std::mt19937_64 rng(cfg.seed + 67);
    std::uniform_real_distribution<double> in_circle(-2.0, 2.0);
    for (int k = 0; k < 400; ++k) {
        double s1 = in_circle(rng), s2 = in_circle(rng);
        if (k % 4 == 0) s1 = 2.0;  // parabolic boundary exactly
        if (k % 8 == 4) s1 = -2.0;
        PalindromicQuartic q{-(s1 + s2), 2.0 + s1 * s2};
        PalindromicRoots roots = solve_palindromic(q);
        auto oracle = quartic_roots_oracle(q.a, q.b, q.a, 1.0);
        double worst = greedy_chordal_match(roots.eigenvalues, oracle);
        worst_seen = std::max(worst_seen, worst);
        c.requiref(worst <= kTol, "synthetic circle-boundary quartic mismatch ", worst);
        if (!c.ok) break;
    }

    std::ostringstream os;
    os << "worst chordal mismatch " << worst_seen;
    return {"solver_equivalence", c.ok, c.checks, 0.0, c.ok ? os.str() : c.detail};
}

// window-map geometry: affine structure, finite differences, expansion rate
SuiteResult suite_dynamics(const RunConfig& cfg) {
    Checker c;
    const double lambda = 0.5;
    const int nb = 6; // branch return time used by the engineered orbit
    const double u_minus = 1.0, s_plus = 1.0;
    const double phi_plus = 0.3, phi_minus = 4.0;
    LinearModelParams p((phi_minus - phi_plus) / nb, 1.0, lambda);
    HomoclinicMatrix h = special_case_matrix(1.0);
    WindowConfig w(Vec4(phi_plus, s_plus, 0.0, 0.0), Vec4(phi_minus, 0.0, 0.0, u_minus),
                   0.1, 0.05);

    const double lam_nb = std::pow(lambda, nb);

    // engineered branch point: u chosen so the n-th image lands on u = u-
    std::array<double, 4> c0{0.0, 0.0, 0.0, lam_nb * u_minus / w.mu};
    Vec4 z0 = window_to_section(w, c0);
    auto times = dn_return_times(w, p, z0);
    c.require(times.size() == 1 && times[0] == nb, "engineered point has wrong D_n set");
    TransverseImage ti = transverse_map(w, p, z0);
    c.require(ti.n == nb, "transverse map picked a different return time");
    c.requiref(std::fabs(ti.image.u - u_minus) <= 1e-12, "image u misses u-: ",
               ti.image.u);

    // doubling the u-offset shifts the return time down by one octave; use a
    // window with every n phase-aligned (p+ and p- at the same angle,
    // omega = 0) so only the u-band selects n
    {
        LinearModelParams p0(0.0, 1.0, lambda);
        WindowConfig w0(Vec4(1.0, s_plus, 0.0, 0.0), Vec4(1.0, 0.0, 0.0, u_minus), 0.1,
                        0.05);
        double u10 = std::pow(lambda, 10) * u_minus;
        auto t_base = dn_return_times(w0, p0, Vec4(1.0, s_plus, 0.0, u10));
        auto t_doubled = dn_return_times(w0, p0, Vec4(1.0, s_plus, 0.0, 2.0 * u10));
        c.require(t_base.size() == 1 && t_base[0] == 10,
                  "phase-aligned base point has wrong return time");
        c.require(t_doubled.size() == 1 && t_doubled[0] == 9,
                  "doubled u-offset does not shift n by log_{1/lambda}(2)");
    }

    // affine fixed point of the n-branch from two map evaluations
    Mat4 M = transition_matrix(h, p, nb);
    WindowImage i0 = window_map_l(h, w, p, c0);
    c.require(i0.n == nb, "window map used a different return time");
    Eigen::Matrix4d A_eig;
    Eigen::Vector4d b_eig;
    for (int i = 0; i < 4; ++i) {
        double mc = 0.0;
        for (int j = 0; j < 4; ++j) {
            A_eig(i, j) = (i == j ? 1.0 : 0.0) - M(i, j);
            mc += M(i, j) * c0[j];
        }
        b_eig(i) = i0.c[i] - mc;
    }
    Eigen::Vector4d cfix = A_eig.partialPivLu().solve(b_eig);
    std::array<double, 4> cstar{cfix(0), cfix(1), cfix(2), cfix(3)};
    c.require(in_window_domain(cstar), "branch fixed point left the window");
    WindowImage ifix = window_map_l(h, w, p, cstar);
    double fixerr = 0.0;
    for (int i = 0; i < 4; ++i) fixerr = std::max(fixerr, std::fabs(ifix.c[i] - cstar[i]));
    c.requiref(ifix.n == nb && fixerr <= 1e-10, "fixed-point residual ", fixerr);

    // finite-difference Jacobian equals Pi Df^n on the component interior
    for (auto offset : {0.0, 5e-4, -5e-4}) {
        std::array<double, 4> at = cstar;
        at[S] += offset;
        at[U] += offset * 1e-4;
        Mat4 jac = window_map_jacobian_fd(h, w, p, at, 1e-6);
        double worst = 0.0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                worst = std::max(worst, std::fabs(jac(i, j) - M(i, j)) /
                                            std::max(1.0, std::fabs(M(i, j))));
        c.requiref(worst <= 1e-6, "finite-difference Jacobian off by ", worst);
    }

    // expansion rate along a constant-n itinerary tracks the dominant
    // eigenvalue modulus
    SpectrumReport rep = full_report(h, p, nb, cfg);
    c.require(rep.classification == Classification::HyperbolicReal,
              "engineered branch is not HyperbolicReal");
    double dominant = 0.0;
    for (const cplx& z : rep.eigenvalues) dominant = std::max(dominant, std::abs(z));

    std::array<double, 4> cpert = cstar;
    cpert[U] += 2e-11;
    auto recs = itinerary(h, w, p, cpert, 10);
    c.requiref(recs.size() >= 5, "constant-n itinerary too short: ", recs.size());
    if (c.ok) {
        bool const_n = true;
        for (const auto& r : recs) const_n = const_n && (r.n == nb);
        c.require(const_n, "itinerary return time drifted");
        double measured = measured_u_expansion(w, recs);
        c.requiref(std::fabs(measured / dominant - 1.0) <= 0.05,
                   "measured expansion ", measured, " vs dominant modulus ", dominant);
    }

    // stable-manifold point escapes immediately
    auto empty = itinerary(h, w, p, {0.1, 0.2, 0.05, 0.0}, 5);
    c.require(empty.empty(), "stable-manifold point produced returns");

    // seeded random search for a length >= 3 itinerary, then deterministic
    // replay
    std::mt19937_64 rng(cfg.seed + 97);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::array<double, 4> best{};
    size_t best_len = 0;
    std::array<double, 4> center{};
    double radius = 1.0;
    for (int phase = 0; phase < 8; ++phase) {
        for (int k = 0; k < 20000; ++k) {
            std::array<double, 4> cand;
            for (int i = 0; i < 4; ++i)
                cand[i] = center[i] + radius * unit(rng);
            if (!in_window_domain(cand)) continue;
            size_t len = itinerary(h, w, p, cand, 5).size();
            if (len > best_len) {
                best_len = len;
                best = cand;
            }
        }
        center = best;
        radius /= 8.0;
    }
    c.requiref(best_len >= 3, "random search found at most ", best_len, " returns");
    auto replay1 = itinerary(h, w, p, best, 5);
    auto replay2 = itinerary(h, w, p, best, 5);
    bool identical = replay1.size() == replay2.size();
    for (size_t i = 0; identical && i < replay1.size(); ++i) {
        identical = replay1[i].n == replay2[i].n &&
                    replay1[i].entry_point.phi == replay2[i].entry_point.phi &&
                    replay1[i].exit_point.u == replay2[i].exit_point.u;
    }
    c.require(identical, "itinerary replay is not deterministic");

    std::ostringstream os;
    os << "longest searched itinerary " << best_len;
    return {"dynamics", c.ok, c.checks, 0.0, c.ok ? os.str() : c.detail};
}

using SuiteFn = std::function<SuiteResult(const RunConfig&)>;

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
    static const std::vector<std::pair<std::string, SuiteFn>> r = {
        {"symplectic_core", suite_symplectic_core},
        {"coefficients", suite_coefficients},
        {"lemma1", suite_lemma1},
        {"theorem2_existence", suite_theorem2_existence},
        {"theorem2_asymptotics", suite_theorem2_asymptotics},
        {"d22_branch", suite_d22_branch},
        {"theorem3_iff", suite_theorem3_iff},
        {"factorization", suite_factorization},
        {"solver_equivalence", suite_solver_equivalence},
        {"dynamics", suite_dynamics},
    };
    return r;
}

} // namespace

std::vector<std::string> verify_suite_names() {
    std::vector<std::string> names;
    for (const auto& [name, fn] : registry()) names.push_back(name);
    return names;
}

std::vector<SuiteResult> run_verify(const RunConfig& cfg,
                                    const std::vector<std::string>& filter, int jobs) {
    std::vector<std::pair<std::string, SuiteFn>> selected;
    for (const auto& entry : registry()) {
        if (filter.empty() ||
            std::find(filter.begin(), filter.end(), entry.first) != filter.end())
            selected.push_back(entry);
    }
    for (const std::string& f : filter) {
        bool known = false;
        for (const auto& entry : registry()) known = known || entry.first == f;
        if (!known) throw Error("unknown verify suite: " + f);
    }

    std::vector<SuiteResult> results(selected.size());
    if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
    jobs = std::max(1, std::min<int>(jobs, static_cast<int>(selected.size())));

    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= selected.size()) return;
            auto t0 = std::chrono::steady_clock::now();
            SuiteResult r;
            try {
                r = selected[i].second(cfg);
            } catch (const std::exception& e) {
                r = {selected[i].first, false, 0, 0.0, std::string("exception: ") + e.what()};
            }
            r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            results[i] = std::move(r);
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return results;
}

} // namespace ttspec
