#pragma once

#include <Eigen/Core>
#include <functional>

#include "hdbound/estimators.hpp"

namespace hdbound {

enum class BasisKind { Power };

struct BasisSpec {
    BasisKind kind = BasisKind::Power;
    int p = 1;       // number of basis functions
    double a = -1.0; // domain lower end
    double b = 1.0;  // domain upper end

    void validate() const;
    /// Affine map of [a, b] onto [-1, 1].
    double map_to_unit(double x) const;
};

/// (1, t, t^2, ..., t^{p-1}) with t = map_to_unit(x); x outside [a, b]
/// throws.
Eigen::VectorXd basis_eval(const BasisSpec& spec, double x);

/// Design matrix with rows basis_eval(spec, x_i).
Eigen::MatrixXd basis_design(const BasisSpec& spec, const Eigen::VectorXd& x);

/// sup over a uniform grid of ||h(x)||_2; nondecreasing in p for nested
/// bases.
double zeta(const BasisSpec& spec, int grid_size = 1001);

/// Least squares of y on the basis expansion of x; needs n > p and a
/// full-rank design.
Estimate fit_series(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                    const BasisSpec& spec);

struct SeriesBound {
    double bound = 0.0;     // zeta(p) * ||beta_hat - beta_pseudo||_2
    double pointwise = 0.0; // |h(x0)'(beta_hat - beta_pseudo)|
    bool holds = false;
};

/// Pointwise prediction-error bound at x0 relative to a reference
/// coefficient vector; holds by Cauchy-Schwarz up to float noise.
SeriesBound predict_error_bound(const BasisSpec& spec, const Estimate& est,
                                const Eigen::VectorXd& beta_pseudo, double x0,
                                int grid_size = 1001);

/// L2 proxy for the sup-norm-optimal coefficients: least squares on a dense
/// noiseless grid of g evaluations. The proxy's sup gap from g should be
/// reported alongside any use, not folded into other numbers.
Eigen::VectorXd pseudo_true_coefficients(const BasisSpec& spec,
                                         const std::function<double(double)>& g,
                                         int n_oracle = 100000);

} // namespace hdbound
