#pragma once

#include "sympdl/common.hpp"
#include "sympdl/symplin.hpp"

#include <map>
#include <string>

namespace sympdl {

/// One monomial contribution to a 2-form coefficient:
///   omega_{ij}(x) += value * prod_k x_k^exps[k]   (and omega_{ji} -= ...).
struct PolyTerm {
    std::vector<int> exps;
    int i = 0;
    int j = 1;
    double value = 0.0;
};

/// A smooth field of antisymmetric d x d matrices over a region — the
/// discrete stand-in for a 2-form.  Constant/polynomial/named fields keep
/// their defining data so they can round-trip through the on-disk format.
struct FormField {
    enum class Kind { Constant, Polynomial, Named, Custom };

    int dim = 0;
    Region region;
    Kind kind = Kind::Custom;

    Mat constant;                              // Kind::Constant
    std::vector<PolyTerm> terms;               // Kind::Polynomial
    std::string name;                          // Kind::Named
    std::map<std::string, double> params;      // Kind::Named

    std::function<Mat(const Vec&)> custom_eval;

    /// Optional structure hint: the form is zero on (x_i,x_i) and (y_i,y_i)
    /// pairs of the interleaved coordinates (x_1,y_1,...), with
    /// omega(e_{2i}, e_{2j+1}) = B_{ij}.  When both endpoints of a linear
    /// interpolation expose it, sigma_min can be read off the half-size block.
    std::function<Mat(const Vec&)> pair_block;

    Mat eval(const Vec& x) const;
    symplin::AntisymMatrix eval_antisym(const Vec& x) const;
};

FormField make_constant_field(const Mat& omega, Region region);
FormField make_polynomial_field(int dim, std::vector<PolyTerm> terms, Region region);

/// Built-in families, addressable from input files by name:
///   canonical               { dim, radius }
///   perturbed_canonical_r4  { eps, radius }   J + eps * d(lambda), linear coefficients
///   cubic_closed_r4         { eps, radius }   J + eps * d(lambda'), quadratic coefficients
///   radial_degenerate_r2    { px, py, radius }  ||x - p||^2 * J, degenerate at p
FormField named_field(const std::string& name, const std::map<std::string, double>& params);

std::vector<std::string> named_field_names();

}  // namespace sympdl
