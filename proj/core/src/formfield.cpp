#include "sympdl/formfield.hpp"

#include <cmath>

namespace sympdl {

namespace {

double monomial(const std::vector<int>& exps, const Vec& x) {
    double m = 1.0;
    for (std::size_t k = 0; k < exps.size(); ++k)
        for (int e = 0; e < exps[k]; ++e) m *= x[static_cast<Eigen::Index>(k)];
    return m;
}

Mat eval_terms(int dim, const std::vector<PolyTerm>& terms, const Vec& x) {
    Mat m = Mat::Zero(dim, dim);
    for (const PolyTerm& t : terms) {
        const double v = t.value * monomial(t.exps, x);
        m(t.i, t.j) += v;
        m(t.j, t.i) -= v;
    }
    return m;
}

}  // namespace

Mat FormField::eval(const Vec& x) const {
    if (x.size() != dim) throw InputError("FormField::eval: point dimension mismatch");
    switch (kind) {
        case Kind::Constant: return constant;
        case Kind::Polynomial: return eval_terms(dim, terms, x);
        case Kind::Named:
        case Kind::Custom: return custom_eval(x);
    }
    throw InputError("FormField::eval: uninitialized field");
}

symplin::AntisymMatrix FormField::eval_antisym(const Vec& x) const {
    return symplin::AntisymMatrix::from(eval(x));
}

FormField make_constant_field(const Mat& omega, Region region) {
    if (omega.rows() != omega.cols() || omega.rows() != region.dim())
        throw InputError("make_constant_field: dimension mismatch");
    FormField f;
    f.dim = static_cast<int>(omega.rows());
    f.region = std::move(region);
    f.kind = FormField::Kind::Constant;
    f.constant = 0.5 * (omega - omega.transpose());
    return f;
}

FormField make_polynomial_field(int dim, std::vector<PolyTerm> terms, Region region) {
    if (region.dim() != dim) throw InputError("make_polynomial_field: dimension mismatch");
    for (const PolyTerm& t : terms) {
        if (t.i < 0 || t.j < 0 || t.i >= dim || t.j >= dim || t.i == t.j)
            throw InputError("make_polynomial_field: bad term indices");
        if (static_cast<int>(t.exps.size()) != dim)
            throw InputError("make_polynomial_field: exponent vector length != dim");
    }
    FormField f;
    f.dim = dim;
    f.region = std::move(region);
    f.kind = FormField::Kind::Polynomial;
    f.terms = std::move(terms);
    return f;
}

namespace {

double get_param(const std::map<std::string, double>& p, const std::string& key,
                 double fallback) {
    auto it = p.find(key);
    return it == p.end() ? fallback : it->second;
}

std::vector<PolyTerm> perturbation_terms_r4(double eps) {
    // d(lambda) for lambda = (x3^2 + x2*x4) dx1 + x1*x3 dx2:
    //   (x3 - x4) dx1^dx2 - 2 x3 dx1^dx3 - x2 dx1^dx4 - x1 dx2^dx3.
    std::vector<PolyTerm> t;
    t.push_back({{0, 0, 1, 0}, 0, 1, eps});
    t.push_back({{0, 0, 0, 1}, 0, 1, -eps});
    t.push_back({{0, 0, 1, 0}, 0, 2, -2.0 * eps});
    t.push_back({{0, 1, 0, 0}, 0, 3, -eps});
    t.push_back({{1, 0, 0, 0}, 1, 2, -eps});
    return t;
}

std::vector<PolyTerm> cubic_terms_r4(double eps) {
    // d(lambda) for lambda = x1^2 * x2 dx3:
    //   2 x1 x2 dx1^dx3 + x1^2 dx2^dx3.
    std::vector<PolyTerm> t;
    t.push_back({{1, 1, 0, 0}, 0, 2, 2.0 * eps});
    t.push_back({{2, 0, 0, 0}, 1, 2, eps});
    return t;
}

std::vector<PolyTerm> with_constant(const Mat& c, std::vector<PolyTerm> t) {
    const int d = static_cast<int>(c.rows());
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            if (c(i, j) != 0.0) t.push_back({std::vector<int>(d, 0), i, j, c(i, j)});
    return t;
}

}  // namespace

FormField named_field(const std::string& name, const std::map<std::string, double>& params) {
    using symplin::j_std;
    if (name == "canonical") {
        const int d = static_cast<int>(get_param(params, "dim", 2));
        const double r = get_param(params, "radius", 1.0);
        FormField f = make_constant_field(j_std(d), Region::ball(Vec::Zero(d), r));
        f.kind = FormField::Kind::Named;
        f.name = name;
        f.params = {{"dim", double(d)}, {"radius", r}};
        f.custom_eval = [m = f.constant](const Vec&) { return m; };
        return f;
    }
    if (name == "perturbed_canonical_r4" || name == "cubic_closed_r4") {
        const double eps = get_param(params, "eps", 0.1);
        const double r = get_param(params, "radius", 1.0);
        auto terms = name == "perturbed_canonical_r4" ? perturbation_terms_r4(eps)
                                                      : cubic_terms_r4(eps);
        FormField f = make_polynomial_field(4, with_constant(j_std(4), std::move(terms)),
                                            Region::ball(Vec::Zero(4), r));
        f.kind = FormField::Kind::Named;
        f.name = name;
        f.params = {{"eps", eps}, {"radius", r}};
        auto ts = f.terms;
        f.custom_eval = [ts](const Vec& x) { return eval_terms(4, ts, x); };
        return f;
    }
    if (name == "radial_degenerate_r2") {
        const double px = get_param(params, "px", 0.3);
        const double py = get_param(params, "py", 0.0);
        const double r = get_param(params, "radius", 1.0);
        FormField f;
        f.dim = 2;
        f.region = Region::ball(Vec::Zero(2), r);
        f.kind = FormField::Kind::Named;
        f.name = name;
        f.params = {{"px", px}, {"py", py}, {"radius", r}};
        f.custom_eval = [px, py](const Vec& x) {
            const double s = sqr(x[0] - px) + sqr(x[1] - py);
            Mat m(2, 2);
            m << 0.0, s, -s, 0.0;
            return m;
        };
        return f;
    }
    throw InputError("named_field: unknown field '" + name + "'");
}

std::vector<std::string> named_field_names() {
    return {"canonical", "perturbed_canonical_r4", "cubic_closed_r4",
            "radial_degenerate_r2"};
}

}  // namespace sympdl
