#include "sympdl/common.hpp"

#include <Eigen/SVD>

#include <cmath>

namespace sympdl {

NormSpec NormSpec::lp(double p) {
    if (!(p > 1.0)) throw InputError("NormSpec::lp requires p > 1");
    return {Kind::Lp, p};
}

double NormSpec::norm(const Vec& v) const {
    switch (kind) {
        case Kind::Euclidean: return v.norm();
        case Kind::L1: return v.lpNorm<1>();
        case Kind::LInf: return v.size() == 0 ? 0.0 : v.lpNorm<Eigen::Infinity>();
        case Kind::Lp: {
            double s = 0.0;
            for (Eigen::Index i = 0; i < v.size(); ++i) s += std::pow(std::abs(v[i]), p);
            return std::pow(s, 1.0 / p);
        }
    }
    return 0.0;
}

NormSpec NormSpec::dual() const {
    switch (kind) {
        case Kind::Euclidean: return euclidean();
        case Kind::L1: return linf();
        case Kind::LInf: return l1();
        case Kind::Lp: return lp(p / (p - 1.0));
    }
    return euclidean();
}

double NormSpec::dual_norm(const Vec& v) const { return dual().norm(v); }

double NormSpec::op_norm(const Mat& m) const {
    switch (kind) {
        case Kind::Euclidean:
            return m.size() == 0 ? 0.0 : m.jacobiSvd().singularValues()(0);
        case Kind::L1:
            return m.cwiseAbs().colwise().sum().maxCoeff();
        case Kind::LInf:
            return m.cwiseAbs().rowwise().sum().maxCoeff();
        case Kind::Lp:
            throw InputError("operator norm is only provided for euclidean/l1/linf");
    }
    return 0.0;
}

std::string NormSpec::to_string() const {
    switch (kind) {
        case Kind::Euclidean: return "euclidean";
        case Kind::L1: return "ell1";
        case Kind::LInf: return "ellinf";
        case Kind::Lp: return "ellp(" + std::to_string(p) + ")";
    }
    return "euclidean";
}

NormSpec NormSpec::from_string(const std::string& s) {
    if (s == "euclidean" || s == "l2" || s == "ell2") return euclidean();
    if (s == "ell1" || s == "l1") return l1();
    if (s == "ellinf" || s == "linf") return linf();
    if (s.rfind("ellp(", 0) == 0 && s.back() == ')')
        return lp(std::stod(s.substr(5, s.size() - 6)));
    throw InputError("unknown norm spec: " + s);
}

Region Region::ball(Vec center, double radius, NormSpec norm) {
    Region r;
    r.kind = Kind::Ball;
    r.center = std::move(center);
    r.radius = radius;
    r.norm = norm;
    return r;
}

Region Region::box(Vec center, Vec halfwidth) {
    if (center.size() != halfwidth.size())
        throw InputError("Region::box: center/halfwidth size mismatch");
    Region r;
    r.kind = Kind::Box;
    r.center = std::move(center);
    r.halfwidth = std::move(halfwidth);
    return r;
}

bool Region::contains(const Vec& x) const {
    if (x.size() != center.size()) return false;
    if (kind == Kind::Ball) return norm.norm(x - center) <= radius;
    return ((x - center).cwiseAbs().array() <= halfwidth.array()).all();
}

Quadrature gauss_legendre_01(int n) {
    if (n < 1) throw InputError("gauss_legendre_01: need n >= 1 nodes");
    // Newton iteration on Legendre P_n over [-1, 1], then affine map to [0, 1].
    Quadrature q;
    q.nodes.resize(n);
    q.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        q.nodes[i] = 0.5 * (1.0 + x);
        q.weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
    }
    return q;
}

double Sampler::uniform(double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    return d(rng_);
}

Vec Sampler::uniform_vec(int dim, double lo, double hi) {
    Vec v(dim);
    for (int i = 0; i < dim; ++i) v[i] = uniform(lo, hi);
    return v;
}

Vec Sampler::unit_vec(int dim) {
    std::normal_distribution<double> d(0.0, 1.0);
    Vec v(dim);
    double n = 0.0;
    do {
        for (int i = 0; i < dim; ++i) v[i] = d(rng_);
        n = v.norm();
    } while (n < 1e-12);
    return v / n;
}

Vec Sampler::in_region(const Region& region, double shrink) {
    const int d = region.dim();
    if (region.kind == Region::Kind::Box) {
        Vec x(d);
        for (int i = 0; i < d; ++i)
            x[i] = region.center[i] + shrink * region.halfwidth[i] * uniform(-1.0, 1.0);
        return x;
    }
    // Rejection against the ball norm, drawing from the bounding box.
    for (int tries = 0; tries < 10000; ++tries) {
        Vec x = uniform_vec(d, -1.0, 1.0) * (region.radius * shrink);
        if (region.norm.norm(x) <= region.radius * shrink) return region.center + x;
    }
    return region.center;
}

double sigma_min(const Mat& m) {
    if (m.size() == 0) return 0.0;
    if (m.rows() <= 32) {
        Eigen::JacobiSVD<Mat> svd(m);
        return svd.singularValues().minCoeff();
    }
    Eigen::BDCSVD<Mat> svd(m);
    return svd.singularValues().minCoeff();
}

}  // namespace sympdl
