#include "sympdl/symplin.hpp"

#include <Eigen/SVD>

#include <cmath>

namespace sympdl::symplin {

AntisymMatrix AntisymMatrix::from(const Mat& m) {
    if (m.rows() != m.cols() || m.rows() == 0)
        throw InputError("AntisymMatrix: need a nonempty square matrix");
    AntisymMatrix a;
    a.dim = static_cast<int>(m.rows());
    a.entries = 0.5 * (m - m.transpose());
    a.antisym_correction = (m - a.entries).cwiseAbs().maxCoeff();
    return a;
}

AntisymMatrix AntisymMatrix::zero(int d) {
    if (d <= 0) throw InputError("AntisymMatrix: dimension must be positive");
    AntisymMatrix a;
    a.dim = d;
    a.entries = Mat::Zero(d, d);
    return a;
}

double Covector::apply(const Vec& v) const {
    if (v.size() != coeffs.size())
        throw InputError("Covector::apply: dimension mismatch");
    return coeffs.dot(v);
}

Mat j_std(int dim) {
    if (dim <= 0 || dim % 2 != 0) throw InputError("j_std: dimension must be even");
    Mat j = Mat::Zero(dim, dim);
    for (int i = 0; i + 1 < dim; i += 2) {
        j(i, i + 1) = 1.0;
        j(i + 1, i) = -1.0;
    }
    return j;
}

Covector flat(const AntisymMatrix& omega, const Vec& u) {
    if (u.size() != omega.dim)
        throw InputError("flat: vector length does not match form dimension");
    return Covector{omega.entries.transpose() * u};
}

double omega_norm(const AntisymMatrix& omega, const Vec& u, const NormSpec& norm) {
    return norm.dual_norm(flat(omega, u).coeffs);
}

DegeneracyReport degeneracy_report(const AntisymMatrix& omega, double margin) {
    Eigen::JacobiSVD<Mat> svd(omega.entries);
    const Vec sv = svd.singularValues();
    DegeneracyReport r;
    r.margin = margin;
    r.sigma_min = sv.size() == 0 ? 0.0 : sv.minCoeff();
    const double rank_tol =
        std::max(margin, omega.dim * (sv.size() ? sv(0) : 0.0) *
                             std::numeric_limits<double>::epsilon());
    r.rank = static_cast<int>((sv.array() > rank_tol).count());
    r.invertible = r.sigma_min > margin;
    return r;
}

Mat linear_darboux(const AntisymMatrix& omega, double margin) {
    const int d = omega.dim;
    if (d % 2 != 0)
        throw DegeneracyError("linear_darboux: odd dimension", 0.0, Vec::Zero(d), 0.0);
    const DegeneracyReport rep = degeneracy_report(omega, margin);
    if (!rep.invertible)
        throw DegeneracyError("linear_darboux: form below invertibility margin",
                              0.0, Vec::Zero(d), rep.sigma_min);

    const Mat& w = omega.entries;
    // Candidate vectors, deflated pair by pair.
    std::vector<Vec> cand;
    cand.reserve(d);
    for (int i = 0; i < d; ++i) cand.push_back(Vec::Unit(d, i));

    Mat a(d, d);
    int col = 0;
    while (!cand.empty()) {
        // Full pivot: the candidate pair with the largest |omega(u, v)|.
        std::size_t bi = 0, bj = 1;
        double best = -1.0;
        for (std::size_t i = 0; i < cand.size(); ++i)
            for (std::size_t j = i + 1; j < cand.size(); ++j) {
                const double val = std::abs(cand[i].dot(w * cand[j]));
                if (val > best) {
                    best = val;
                    bi = i;
                    bj = j;
                }
            }
        if (best <= 0.0)
            throw DegeneracyError("linear_darboux: deflation stalled", 0.0,
                                  Vec::Zero(d), best);
        Vec u = cand[bi];
        const double pairing = u.dot(w * cand[bj]);
        Vec v = cand[bj] / pairing;
        // Balance the pair so neither column carries the whole scale.
        const double s = std::sqrt(u.norm() / v.norm());
        u /= s;
        v *= s;
        a.col(col) = u;
        a.col(col + 1) = v;
        col += 2;

        std::vector<Vec> next;
        next.reserve(cand.size() - 2);
        for (std::size_t k = 0; k < cand.size(); ++k) {
            if (k == bi || k == bj) continue;
            const Vec& z = cand[k];
            Vec zd = z - z.dot(w * v) * u + z.dot(w * u) * v;
            // Second sweep knocks out roundoff reintroduced by the first.
            zd = zd - zd.dot(w * v) * u + zd.dot(w * u) * v;
            next.push_back(std::move(zd));
        }
        cand = std::move(next);
    }
    return a;
}

double darboux_pairing(const Vec& u, const Covector& eta, const Vec& v, const Covector& xi) {
    if (u.size() != xi.coeffs.size() || v.size() != eta.coeffs.size())
        throw InputError("darboux_pairing: dimension mismatch");
    return eta.apply(v) - xi.apply(u);
}

}  // namespace sympdl::symplin
