#include "ttspec/homoclinic.hpp"

#include <sstream>

#include <Eigen/Dense>

#include "ttspec/errors.hpp"
#include "ttspec/symplectic.hpp"

namespace ttspec {

HomoclinicMatrix HomoclinicMatrix::checked(const Mat4& pi, double tol) {
    if (!all_finite(pi)) throw NonFinite("HomoclinicMatrix: non-finite entry");
    if (!is_symplectic(pi, tol)) {
        std::ostringstream os;
        os << "HomoclinicMatrix: symplecticity residual " << symplectic_residual(pi)
           << " exceeds tol " << tol;
        throw NonSymplectic(os.str());
    }
    return HomoclinicMatrix(pi, true);
}

HomoclinicMatrix HomoclinicMatrix::unchecked(const Mat4& pi) {
    if (!all_finite(pi)) throw NonFinite("HomoclinicMatrix: non-finite entry");
    return HomoclinicMatrix(pi, false);
}

double transversality_delta(const HomoclinicMatrix& h) {
    return h.c(1, 1) * h.d(2, 2) - h.d(1, 2) * h.c(2, 1);
}

namespace {

// columns: Pi e_phi, Pi e_u, e_phi, e_s
Eigen::Matrix4d spanning_matrix(const HomoclinicMatrix& h) {
    const Mat4& pi = h.pi();
    Eigen::Matrix4d g = Eigen::Matrix4d::Zero();
    for (int i = 0; i < 4; ++i) {
        g(i, 0) = pi(i, PHI);
        g(i, 1) = pi(i, U);
    }
    g(PHI, 2) = 1.0;
    g(S, 3) = 1.0;
    return g;
}

} // namespace

std::array<double, 4> transversality_singular_values(const HomoclinicMatrix& h) {
    Eigen::JacobiSVD<Eigen::Matrix4d> svd(spanning_matrix(h));
    std::array<double, 4> s{};
    for (int i = 0; i < 4; ++i) s[i] = svd.singularValues()[i];
    return s;
}

bool is_transverse_rank_oracle(const HomoclinicMatrix& h, double tol_rank) {
    auto s = transversality_singular_values(h);
    return s[3] > tol_rank * s[0];
}

TransversalityReport transversality_report(const HomoclinicMatrix& h, double tol_rank) {
    TransversalityReport r;
    r.delta = transversality_delta(h);
    r.d22 = h.d(2, 2);
    r.transverse = std::fabs(r.delta) > tol_rank;
    r.strongly_transverse = r.transverse && std::fabs(r.d22) > tol_rank;
    return r;
}

bool fenichel_leaf_test(const HomoclinicMatrix& h) { return h.d(2, 2) != 0.0; }

Mat4 parse_matrix16(const std::string& text) {
    std::istringstream is(text);
    Mat4 m;
    for (int k = 0; k < 16; ++k) {
        double v;
        if (!(is >> v)) throw Error("matrix input: expected 16 whitespace-separated reals");
        m(k / 4, k % 4) = v;
    }
    double extra;
    if (is >> extra) throw Error("matrix input: more than 16 values");
    return m;
}

} // namespace ttspec
