#pragma once

#include "sympdl/common.hpp"

namespace sympdl::symplin {

/// Antisymmetric bilinear form on R^d, stored as its Gram matrix.
/// Construction antisymmetrizes the input ((M - M^T)/2) and records how
/// large the correction was; callers can warn when it exceeds 1e-12.
struct AntisymMatrix {
    int dim = 0;
    Mat entries;
    double antisym_correction = 0.0;

    static AntisymMatrix from(const Mat& m);
    static AntisymMatrix zero(int d);

    double operator()(const Vec& u, const Vec& v) const { return u.dot(entries * v); }
};

/// Element of the dual space, as a coefficient row.
struct Covector {
    Vec coeffs;

    int dim() const { return static_cast<int>(coeffs.size()); }
    double apply(const Vec& v) const;
};

/// Canonical block form: dim x dim block diagonal of [[0,1],[-1,0]] pairs,
/// i.e. coordinates interleaved as (x1, y1, x2, y2, ...).
Mat j_std(int dim);

/// omega^flat(u) = omega(u, .) as a covector.
Covector flat(const AntisymMatrix& omega, const Vec& u);

/// ||u||_omega = dual norm of omega^flat(u).
double omega_norm(const AntisymMatrix& omega, const Vec& u, const NormSpec& norm);

struct DegeneracyReport {
    double sigma_min = 0.0;
    int rank = 0;
    bool invertible = false;
    double margin = 0.0;
};

/// Smallest singular value, numerical rank, and an invertibility verdict
/// at the given margin (the library-wide default margin is 1e-8).
DegeneracyReport degeneracy_report(const AntisymMatrix& omega, double margin = 1e-8);

/// Linear Darboux normalization by symplectic Gram-Schmidt with full
/// pivoting: returns invertible A with A^T Omega A = j_std(dim) up to
/// max-entry residual <= 1e-9.  Requires even dimension and
/// sigma_min(Omega) above the margin.
Mat linear_darboux(const AntisymMatrix& omega, double margin = 1e-8);

/// omega_L((u,eta),(v,xi)) = <eta, v> - <xi, u>.
double darboux_pairing(const Vec& u, const Covector& eta, const Vec& v, const Covector& xi);

}  // namespace sympdl::symplin
