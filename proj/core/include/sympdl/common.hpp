#pragma once

#include <Eigen/Dense>

#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace sympdl {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Malformed or mismatched inputs (wrong dimension, bad file, broken tower).
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// A form (or interpolation path) dropped below the invertibility margin.
/// Carries the failing path time, point and measured smallest singular value.
class DegeneracyError : public std::runtime_error {
public:
    DegeneracyError(const std::string& what, double t, Vec x, double sigma_min)
        : std::runtime_error(what), t(t), x(std::move(x)), sigma_min(sigma_min) {}
    double t;
    Vec x;
    double sigma_min;
};

/// A trajectory left its declared region; we fail rather than extrapolate.
class DomainError : public std::runtime_error {
public:
    DomainError(const std::string& what, double t, Vec x)
        : std::runtime_error(what), t(t), x(std::move(x)) {}
    double t;
    Vec x;
};

/// Vector norm selector.  Dual norms use the classical pairs
/// (l1 <-> linf, l2 self-dual, lp <-> lq with 1/p + 1/q = 1).
struct NormSpec {
    enum class Kind { Euclidean, L1, LInf, Lp };

    Kind kind = Kind::Euclidean;
    double p = 2.0;  // only meaningful for Kind::Lp, must be > 1

    static NormSpec euclidean() { return {Kind::Euclidean, 2.0}; }
    static NormSpec l1() { return {Kind::L1, 1.0}; }
    static NormSpec linf() { return {Kind::LInf, 0.0}; }
    static NormSpec lp(double p);

    double norm(const Vec& v) const;
    double dual_norm(const Vec& v) const;
    /// Induced operator norm of a matrix: max column sum for l1, max row
    /// sum for linf, largest singular value for euclidean.
    double op_norm(const Mat& m) const;

    NormSpec dual() const;
    std::string to_string() const;
    static NormSpec from_string(const std::string& s);
};

/// Axis-aligned box or norm ball; the domain of a form field.
struct Region {
    enum class Kind { Ball, Box };

    Kind kind = Kind::Ball;
    Vec center;
    double radius = 1.0;      // ball
    NormSpec norm;            // ball norm
    Vec halfwidth;            // box

    static Region ball(Vec center, double radius, NormSpec norm = NormSpec::euclidean());
    static Region box(Vec center, Vec halfwidth);

    int dim() const { return static_cast<int>(center.size()); }
    bool contains(const Vec& x) const;
};

/// Nodes/weights of the n-point Gauss-Legendre rule on [0, 1].
struct Quadrature {
    std::vector<double> nodes;
    std::vector<double> weights;
};
Quadrature gauss_legendre_01(int n);

/// Deterministic point sampling.  Every sampled-point generator in the
/// library goes through one of these so a seed fully fixes the run.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed = 0) : rng_(seed) {}

    double uniform(double lo, double hi);
    Vec uniform_vec(int dim, double lo, double hi);
    /// Uniform direction on the euclidean unit sphere.
    Vec unit_vec(int dim);
    /// Point inside a region (rejection-free for balls via radius scaling).
    Vec in_region(const Region& region, double shrink = 1.0);

private:
    std::mt19937_64 rng_;
};

/// Smallest singular value (0 for an empty matrix).
double sigma_min(const Mat& m);

inline double sqr(double x) { return x * x; }

}  // namespace sympdl
