#include "hdbound/series.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "hdbound/errors.hpp"

namespace hdbound {

void BasisSpec::validate() const {
    if (p < 1) throw DimensionError("BasisSpec: need p >= 1 basis functions");
    if (!(a < b)) throw NumericError("BasisSpec: domain must satisfy a < b");
}

double BasisSpec::map_to_unit(double x) const {
    return 2.0 * (x - a) / (b - a) - 1.0;
}

Eigen::VectorXd basis_eval(const BasisSpec& spec, double x) {
    spec.validate();
    if (x < spec.a || x > spec.b)
        throw NumericError("basis_eval: x = " + std::to_string(x) + " outside [" +
                           std::to_string(spec.a) + ", " + std::to_string(spec.b) + "]");
    double t = spec.map_to_unit(x);
    Eigen::VectorXd h(spec.p);
    double power = 1.0;
    for (int k = 0; k < spec.p; ++k) {
        h[k] = power;
        power *= t;
    }
    return h;
}

Eigen::MatrixXd basis_design(const BasisSpec& spec, const Eigen::VectorXd& x) {
    spec.validate();
    Eigen::MatrixXd H(x.size(), spec.p);
    for (Eigen::Index i = 0; i < x.size(); ++i) H.row(i) = basis_eval(spec, x[i]);
    return H;
}

double zeta(const BasisSpec& spec, int grid_size) {
    spec.validate();
    if (grid_size < 2) throw DimensionError("zeta: need grid_size >= 2");
    double best = 0.0;
    for (int i = 0; i < grid_size; ++i) {
        double x = spec.a + (spec.b - spec.a) * static_cast<double>(i) /
                                static_cast<double>(grid_size - 1);
        best = std::max(best, basis_eval(spec, x).norm());
    }
    return best;
}

Estimate fit_series(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                    const BasisSpec& spec) {
    spec.validate();
    if (x.size() != y.size()) throw DimensionError("fit_series: x and y differ in length");
    if (x.size() <= spec.p) throw DimensionError("fit_series: need n > p");
    Dataset data;
    data.X = basis_design(spec, x);
    data.y = y;
    return ols(data);
}

SeriesBound predict_error_bound(const BasisSpec& spec, const Estimate& est,
                                const Eigen::VectorXd& beta_pseudo, double x0,
                                int grid_size) {
    if (est.beta.size() != spec.p || beta_pseudo.size() != spec.p)
        throw DimensionError("predict_error_bound: coefficient length does not match p");
    Eigen::VectorXd diff = est.beta - beta_pseudo;
    SeriesBound out;
    out.bound = zeta(spec, grid_size) * diff.norm();
    out.pointwise = std::abs(basis_eval(spec, x0).dot(diff));
    out.holds = out.pointwise <= out.bound * (1.0 + 1e-12) + 1e-12;
    return out;
}

Eigen::VectorXd pseudo_true_coefficients(const BasisSpec& spec,
                                         const std::function<double(double)>& g,
                                         int n_oracle) {
    spec.validate();
    if (n_oracle <= spec.p)
        throw DimensionError("pseudo_true_coefficients: oracle sample too small");
    Eigen::VectorXd x(n_oracle), y(n_oracle);
    for (int i = 0; i < n_oracle; ++i) {
        x[i] = spec.a + (spec.b - spec.a) * static_cast<double>(i) /
                            static_cast<double>(n_oracle - 1);
        y[i] = g(x[i]);
    }
    return fit_series(x, y, spec).beta;
}

} // namespace hdbound
