#include "sympdl/moser.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>

#include <cmath>

namespace sympdl::moser {

FormPath FormPath::linear(FormField base, Vec x0) {
    if (x0.size() != base.dim) throw InputError("FormPath: x0 dimension mismatch");
    if (!base.region.contains(x0)) throw InputError("FormPath: x0 outside region");
    FormPath p;
    p.anchor = base.eval(x0);
    p.base = std::move(base);
    p.x0 = std::move(x0);
    p.mode = Mode::Linear;
    return p;
}

FormPath FormPath::exp_scaling(FormField base, Vec x0, double s) {
    FormPath p = linear(std::move(base), std::move(x0));
    p.mode = Mode::ExpScaling;
    p.s = s;
    return p;
}

Mat FormPath::at(double t, const Vec& y) const {
    if (mode == Mode::Linear) {
        if (t == 0.0) return anchor;
        return anchor + t * (base.eval(x0 + y) - anchor);
    }
    return std::exp(s * t) * base.eval(x0 + y);
}

Mat FormPath::ddt(double t, const Vec& y) const {
    if (mode == Mode::Linear) return base.eval(x0 + y) - anchor;
    return s * std::exp(s * t) * base.eval(x0 + y);
}

double closedness_check(const FormField& field, const std::vector<Vec>& points,
                        double h_fd) {
    if (h_fd <= 0.0) throw InputError("closedness_check: h_fd must be positive");
    const int d = field.dim;
    double worst = 0.0;
    for (const Vec& x : points) {
        if (!field.region.contains(x))
            throw InputError("closedness_check: sample point outside region");
        // d omega / dx_i by central differences, for all i at once.
        std::vector<Mat> grad(d);
        for (int i = 0; i < d; ++i) {
            Vec xp = x, xm = x;
            xp[i] += h_fd;
            xm[i] -= h_fd;
            grad[i] = (field.eval(xp) - field.eval(xm)) / (2.0 * h_fd);
        }
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j)
                for (int k = j + 1; k < d; ++k) {
                    const double cyc =
                        grad[i](j, k) + grad[j](k, i) + grad[k](i, j);
                    worst = std::max(worst, std::abs(cyc));
                }
    }
    return worst;
}

symplin::Covector radial_primitive(const FormField& field, const Vec& x, int quad_nodes) {
    if (x.size() != field.dim) throw InputError("radial_primitive: dimension mismatch");
    const Quadrature q = gauss_legendre_01(quad_nodes);
    Vec alpha = Vec::Zero(field.dim);
    for (std::size_t k = 0; k < q.nodes.size(); ++k) {
        const double s = q.nodes[k];
        const Vec xs = s * x;
        if (!field.region.contains(xs))
            throw DomainError("radial_primitive: ray leaves region", s, xs);
        alpha += (q.weights[k] * s) * (field.eval(xs).transpose() * x);
    }
    return symplin::Covector{alpha};
}

Vec moser_vector_field(const FormPath& path,
                       const std::function<symplin::Covector(const Vec&)>& alpha,
                       double t, const Vec& y, double margin) {
    const Vec a = alpha(y).coeffs;
    if (a.isZero(0.0)) return Vec::Zero(path.dim());
    const Mat m = path.at(t, y);
    Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double smin = svd.singularValues().minCoeff();
    if (smin < margin)
        throw DegeneracyError("moser_vector_field: path form below margin", t,
                              path.x0 + y, smin);
    return svd.solve(a);
}

namespace {

// Time-slice primitive alpha^t for the two path families.  For the linear
// path d/dt omega^t is t-independent; for e^{s t} it is a scalar multiple
// of the t = 0 primitive.
std::function<symplin::Covector(double, const Vec&)> make_alpha(const FormPath& path,
                                                                int quad_nodes) {
    FormField recentred;
    recentred.dim = path.dim();
    recentred.kind = FormField::Kind::Custom;
    recentred.region = path.base.region;
    recentred.region.center = path.base.region.center - path.x0;
    if (path.mode == FormPath::Mode::Linear) {
        recentred.custom_eval = [base = path.base, x0 = path.x0,
                                 anchor = path.anchor](const Vec& y) -> Mat {
            return base.eval(x0 + y) - anchor;
        };
        return [recentred, quad_nodes](double, const Vec& y) {
            return radial_primitive(recentred, y, quad_nodes);
        };
    }
    recentred.custom_eval = [base = path.base, x0 = path.x0](const Vec& y) -> Mat {
        return base.eval(x0 + y);
    };
    const double s = path.s;
    return [recentred, quad_nodes, s](double t, const Vec& y) {
        symplin::Covector a = radial_primitive(recentred, y, quad_nodes);
        a.coeffs *= s * std::exp(s * t);
        return a;
    };
}

struct FlowState {
    Vec y;
    Mat dy;
};

struct Checkpoint {
    double t = 0.0;
    FlowState state;
};

// Fixed-step RK4 for the coupled (F, DF) system.  With reverse = true this
// integrates dY/dtau = -X^{1-tau}(Y), whose time-1 map is the inverse of
// the forward time-1 map.
FlowState integrate_flow(const FormPath& path,
                         const std::function<symplin::Covector(double, const Vec&)>& alpha,
                         const Vec& y0, const MoserOpts& opts, bool reverse,
                         std::vector<Checkpoint>* checkpoints,
                         std::vector<std::pair<double, Vec>>* trajectory) {
    const int d = path.dim();
    const double h = 1.0 / opts.steps;
    const double delta = opts.jac_fd_step;

    auto xfield = [&](double tau, const Vec& y) -> Vec {
        const double t = reverse ? 1.0 - tau : tau;
        Vec x = moser_vector_field(path, [&](const Vec& z) { return alpha(t, z); },
                                   t, y, opts.margin);
        return reverse ? Vec(-x) : x;
    };
    auto rhs = [&](double tau, const FlowState& st) -> FlowState {
        FlowState k;
        k.y = xfield(tau, st.y);
        Mat dx(d, d);
        for (int j = 0; j < d; ++j) {
            Vec yp = st.y, ym = st.y;
            yp[j] += delta;
            ym[j] -= delta;
            dx.col(j) = (xfield(tau, yp) - xfield(tau, ym)) / (2.0 * delta);
        }
        k.dy = dx * st.dy;
        return k;
    };

    FlowState st{y0, Mat::Identity(d, d)};
    auto record = [&](double tau) {
        const double t = reverse ? 1.0 - tau : tau;
        if (trajectory) trajectory->emplace_back(t, path.x0 + st.y);
        if (checkpoints) checkpoints->push_back({tau, st});
    };
    record(0.0);
    for (int step = 0; step < opts.steps; ++step) {
        const double tau = step * h;
        const FlowState k1 = rhs(tau, st);
        const FlowState k2 = rhs(tau + 0.5 * h,
                                 {st.y + 0.5 * h * k1.y, st.dy + 0.5 * h * k1.dy});
        const FlowState k3 = rhs(tau + 0.5 * h,
                                 {st.y + 0.5 * h * k2.y, st.dy + 0.5 * h * k2.dy});
        const FlowState k4 = rhs(tau + h, {st.y + h * k3.y, st.dy + h * k3.dy});
        st.y += (h / 6.0) * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y);
        st.dy += (h / 6.0) * (k1.dy + 2.0 * k2.dy + 2.0 * k3.dy + k4.dy);
        if (!path.in_domain(st.y)) {
            const double t = reverse ? 1.0 - (tau + h) : tau + h;
            throw DomainError("moser flow: trajectory left the region", t,
                              path.x0 + st.y);
        }
        record(tau + h);
    }
    return st;
}

std::vector<Vec> report_sample_points(const Region& region, int count,
                                      std::uint64_t seed) {
    Sampler sampler(seed);
    std::vector<Vec> pts;
    pts.reserve(count);
    for (int i = 0; i < count; ++i) pts.push_back(sampler.in_region(region, 0.5));
    return pts;
}

double pullback_residual_at(const Mat& jac, const Mat& target_at_image,
                            const Mat& source_at_point) {
    return (jac.transpose() * target_at_image * jac - source_at_point)
        .cwiseAbs()
        .maxCoeff();
}

// Residuals of the partial flow maps against the path: at checkpoint time
// tau the state satisfies (forward) F_tau^* omega^tau = omega^0 or
// (reverse) G_tau^* omega^{1-tau} = omega^1.
FlowReport flow_report(const FormPath& path,
                       const std::function<symplin::Covector(double, const Vec&)>& alpha,
                       const MoserOpts& opts, bool reverse) {
    FlowReport rep;
    const std::vector<double> ts = {0.0, 0.25, 0.5, 0.75, 1.0};
    Region recentred = path.base.region;
    recentred.center = path.base.region.center - path.x0;
    const std::vector<Vec> pts = report_sample_points(recentred, opts.report_points,
                                                      opts.seed);
    rep.sample_points = static_cast<int>(pts.size());
    std::vector<double> worst(ts.size(), 0.0);
    for (const Vec& y : pts) {
        std::vector<Checkpoint> cps;
        integrate_flow(path, alpha, y, opts, reverse, &cps, nullptr);
        const Mat source = reverse ? path.at(1.0, y) : path.at(0.0, y);
        for (const Checkpoint& cp : cps) {
            for (std::size_t i = 0; i < ts.size(); ++i) {
                if (std::abs(cp.t - ts[i]) > 0.5 / opts.steps) continue;
                const double t_path = reverse ? 1.0 - cp.t : cp.t;
                const double r = pullback_residual_at(
                    cp.state.dy, path.at(t_path, cp.state.y), source);
                worst[i] = std::max(worst[i], r);
            }
        }
    }
    for (std::size_t i = 0; i < ts.size(); ++i) {
        rep.per_t.push_back({ts[i], worst[i]});
        rep.max_residual = std::max(rep.max_residual, worst[i]);
    }
    return rep;
}

}  // namespace

Chart moser_flow(const FormPath& path, const Vec& x_start, const MoserOpts& opts) {
    if (opts.steps < 1) throw InputError("moser_flow: steps must be >= 1");
    if (!path.base.region.contains(x_start))
        throw InputError("moser_flow: start point outside region");
    auto alpha = make_alpha(path, opts.quad_nodes);

    Chart chart;
    chart.x0 = path.x0;
    chart.domain = path.base.region;
    chart.map_jac = [path, alpha, opts](const Vec& x) {
        FlowState st = integrate_flow(path, alpha, x - path.x0, opts, false,
                                      nullptr, nullptr);
        return std::make_pair(Vec(path.x0 + st.y), st.dy);
    };
    integrate_flow(path, alpha, x_start - path.x0, opts, false, nullptr,
                   &chart.trajectory);
    chart.report = flow_report(path, alpha, opts, false);
    FlowState at_x0 = integrate_flow(path, alpha, Vec::Zero(path.dim()), opts,
                                     false, nullptr, nullptr);
    chart.report.fixed_point_error = at_x0.y.norm();
    return chart;
}

namespace {

double verify_pullback_impl(const Chart& chart, const FormField& source,
                            const std::function<Mat(const Vec&)>& target,
                            const std::vector<Vec>& points) {
    double worst = 0.0;
    for (const Vec& x : points) {
        if (!chart.domain.contains(x))
            throw InputError("verify_pullback: point outside chart domain");
        auto [fx, jac] = chart.map_jac(x);
        worst = std::max(worst,
                         pullback_residual_at(jac, target(fx), source.eval(x)));
    }
    return worst;
}

}  // namespace

double verify_pullback(const Chart& chart, const FormField& source, const Mat& target,
                       const std::vector<Vec>& points) {
    return verify_pullback_impl(chart, source, [&](const Vec&) { return target; },
                                points);
}

double verify_pullback(const Chart& chart, const FormField& source,
                       const FormField& target, const std::vector<Vec>& points) {
    return verify_pullback_impl(chart, source,
                                [&](const Vec& x) { return target.eval(x); }, points);
}

Chart darboux_chart(const FormField& field, const Vec& x0, const MoserOpts& opts) {
    if (opts.check_closedness) {
        Region shrunk = field.region;
        const std::vector<Vec> pts =
            report_sample_points(field.region, 8, opts.seed + 1);
        const double res = closedness_check(field, pts, opts.closedness_fd_step);
        if (res > opts.closedness_tol)
            throw InputError("darboux_chart: field is not closed (residual " +
                             std::to_string(res) + ")");
    }
    const symplin::AntisymMatrix anchor = field.eval_antisym(x0);
    const Mat a = symplin::linear_darboux(anchor, opts.margin);
    const Mat a_inv = a.partialPivLu().inverse();

    FormPath path = FormPath::linear(field, x0);
    auto alpha = make_alpha(path, opts.quad_nodes);

    Chart chart;
    chart.x0 = x0;
    chart.domain = field.region;
    chart.map_jac = [path, alpha, opts, a_inv, x0](const Vec& x) {
        FlowState st =
            integrate_flow(path, alpha, x - x0, opts, true, nullptr, nullptr);
        return std::make_pair(Vec(x0 + a_inv * st.y), Mat(a_inv * st.dy));
    };
    chart.report = flow_report(path, alpha, opts, true);
    FlowState at_x0 = integrate_flow(path, alpha, Vec::Zero(path.dim()), opts, true,
                                     nullptr, nullptr);
    chart.report.fixed_point_error = (a_inv * at_x0.y).norm();
    return chart;
}

Chart exp_scaling_chart(const FormField& field, const Vec& x0, double s,
                        const MoserOpts& opts) {
    FormPath path = FormPath::exp_scaling(field, x0, s);
    auto alpha = make_alpha(path, opts.quad_nodes);

    Chart chart;
    chart.x0 = x0;
    chart.domain = field.region;
    chart.map_jac = [path, alpha, opts, x0](const Vec& x) {
        FlowState st =
            integrate_flow(path, alpha, x - x0, opts, false, nullptr, nullptr);
        return std::make_pair(Vec(x0 + st.y), st.dy);
    };
    chart.report = flow_report(path, alpha, opts, false);
    FlowState at_x0 = integrate_flow(path, alpha, Vec::Zero(path.dim()), opts, false,
                                     nullptr, nullptr);
    chart.report.fixed_point_error = at_x0.y.norm();
    return chart;
}

FormField scaled_field(const FormField& field, double factor) {
    FormField f;
    f.dim = field.dim;
    f.region = field.region;
    f.kind = FormField::Kind::Custom;
    f.custom_eval = [field, factor](const Vec& x) -> Mat {
        return factor * field.eval(x);
    };
    return f;
}

}  // namespace sympdl::moser
