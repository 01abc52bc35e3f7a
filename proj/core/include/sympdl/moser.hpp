#pragma once

#include "sympdl/common.hpp"
#include "sympdl/formfield.hpp"
#include "sympdl/symplin.hpp"

namespace sympdl::moser {

/// Interpolation family omega^t used by the path method.  Points are taken
/// relative to the anchor point x0 (the chart is translated so x0 = 0,
/// which makes the region star-shaped about the origin for the radial
/// primitive).
///   linear:       omega^t(y) = anchor + t * (base(x0 + y) - anchor)
///   exp_scaling:  omega^t(y) = e^{s t} * base(x0 + y)
struct FormPath {
    enum class Mode { Linear, ExpScaling };

    FormField base;
    Mat anchor;
    Vec x0;
    Mode mode = Mode::Linear;
    double s = 0.0;

    static FormPath linear(FormField base, Vec x0);
    static FormPath exp_scaling(FormField base, Vec x0, double s);

    int dim() const { return base.dim; }
    Mat at(double t, const Vec& y) const;
    Mat ddt(double t, const Vec& y) const;
    /// Region of the path in recentred coordinates y = x - x0.
    bool in_domain(const Vec& y) const { return base.region.contains(x0 + y); }
};

struct PullbackSample {
    double t = 0.0;
    double residual = 0.0;
};

struct FlowReport {
    std::vector<PullbackSample> per_t;
    double max_residual = 0.0;
    double fixed_point_error = 0.0;
    int sample_points = 0;
};

/// A chart: an evaluable map with Jacobian on a domain, plus the pullback
/// residual report recorded when it was built.  Immutable once built and
/// safe to share; map evaluation re-integrates the defining flow.
struct Chart {
    Vec x0;
    Region domain;
    std::function<std::pair<Vec, Mat>(const Vec&)> map_jac;
    FlowReport report;
    std::vector<std::pair<double, Vec>> trajectory;

    Vec map(const Vec& x) const { return map_jac(x).first; }
    Mat jacobian(const Vec& x) const { return map_jac(x).second; }
};

struct MoserOpts {
    int steps = 100;          // fixed-step RK4 on [0,1]
    int quad_nodes = 64;      // Gauss-Legendre nodes for the radial primitive
    double margin = 1e-8;     // invertibility margin along the path
    double jac_fd_step = 1e-5;  // directional central differences of X^t
    int report_points = 20;
    std::uint64_t seed = 0;
    bool check_closedness = true;
    double closedness_tol = 1e-4;
    double closedness_fd_step = 1e-4;
};

/// Max over points and index triples (i,j,k) of the cyclic sum
/// |d_i w_jk + d_j w_ki + d_k w_ij| by central differences of step h_fd.
double closedness_check(const FormField& field, const std::vector<Vec>& points,
                        double h_fd);

/// Poincare-lemma primitive along rays from the origin:
///   alpha_x = int_0^1 s * omega_{s x}(x, .) ds
/// evaluated with Gauss-Legendre quadrature.  The segment {s x} must stay
/// inside the field's region.
symplin::Covector radial_primitive(const FormField& field, const Vec& x, int quad_nodes);

/// The Moser vector field at (t, y): solves omega^t(y) X = alpha(y)^T,
/// i.e. omega^t(X, .) = -alpha, and returns X = 0 exactly when alpha
/// vanishes.  Throws DegeneracyError when sigma_min drops below margin.
Vec moser_vector_field(const FormPath& path,
                       const std::function<symplin::Covector(const Vec&)>& alpha,
                       double t, const Vec& y, double margin);

/// Integrates dF/dt = X^t(F) from t = 0 to 1 (fixed-step RK4), carrying the
/// Jacobian by directional central differences of X^t.  The returned chart
/// maps x -> x0 + F_1(x - x0); its report checks F_t^* omega^t = omega^0 at
/// t in {0, 1/4, 1/2, 3/4, 1} over seeded sample points, and records the
/// trajectory of x_start.
Chart moser_flow(const FormPath& path, const Vec& x_start, const MoserOpts& opts = {});

/// Max over points of entrywise |DF(x)^T target(F(x)) DF(x) - source(x)|.
double verify_pullback(const Chart& chart, const FormField& source, const Mat& target,
                       const std::vector<Vec>& points);
double verify_pullback(const Chart& chart, const FormField& source,
                       const FormField& target, const std::vector<Vec>& points);

/// Darboux chart around x0: inverse Moser flow of the linear path composed
/// with the linear normalization of omega(x0), shifted to fix x0.  The
/// result C satisfies DC(x)^T J_std DC(x) = field(x) up to the reported
/// residual.
Chart darboux_chart(const FormField& field, const Vec& x0, const MoserOpts& opts = {});

/// Moser construction for the family omega^{s,t} = e^{s t} omega at fixed s;
/// s = 0 yields the identity chart exactly.  The report checks the time-1
/// map against e^{s} * field.
Chart exp_scaling_chart(const FormField& field, const Vec& x0, double s,
                        const MoserOpts& opts = {});

/// field scaled by a constant factor (region unchanged).
FormField scaled_field(const FormField& field, double factor);

}  // namespace sympdl::moser
