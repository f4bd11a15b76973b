#include "ttspec/spectrum.hpp"

#include <Eigen/Dense>

#include "ttspec/errors.hpp"

namespace ttspec {

Spectrum dense_eigenvalues(const Mat4& m) {
    if (!all_finite(m)) throw NonFinite("dense_eigenvalues: non-finite entry");
    Eigen::Matrix4d em;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) em(i, j) = m(i, j);
    Eigen::EigenSolver<Eigen::Matrix4d> es(em, /*computeEigenvectors=*/false);
    Spectrum sp;
    for (int i = 0; i < 4; ++i) {
        sp.eigenvalues[i] = es.eigenvalues()[i];
        sp.unit_circle_distances[i] = std::fabs(std::abs(sp.eigenvalues[i]) - 1.0);
    }
    return sp;
}

double chordal_distance(const cplx& z, const cplx& w) {
    double num = 2.0 * std::abs(z - w);
    double den = std::sqrt((1.0 + std::norm(z)) * (1.0 + std::norm(w)));
    return num / den;
}

double greedy_chordal_match(const std::array<cplx, 4>& a, const std::array<cplx, 4>& b) {
    bool used_a[4] = {false, false, false, false};
    bool used_b[4] = {false, false, false, false};
    double worst = 0.0;
    for (int round = 0; round < 4; ++round) {
        double best = -1.0;
        int bi = -1, bj = -1;
        for (int i = 0; i < 4; ++i) {
            if (used_a[i]) continue;
            for (int j = 0; j < 4; ++j) {
                if (used_b[j]) continue;
                double d = chordal_distance(a[i], b[j]);
                if (best < 0.0 || d < best) {
                    best = d;
                    bi = i;
                    bj = j;
                }
            }
        }
        used_a[bi] = used_b[bj] = true;
        worst = std::max(worst, best);
    }
    return worst;
}

} // namespace ttspec
