#pragma once

#include <Eigen/Core>
#include <optional>
#include <vector>

namespace hdbound {

struct Dataset {
    Eigen::MatrixXd X;                        // n x p, rows are observations
    Eigen::VectorXd y;                        // n
    std::optional<Eigen::VectorXd> beta_true; // p, when the truth is known

    Eigen::Index n() const { return X.rows(); }
    Eigen::Index p() const { return X.cols(); }

    /// Throws DimensionError / NumericError when shapes or entries are bad.
    void validate() const;
};

struct LassoOptions {
    double tol = 1e-8;        // convergence: max coordinate change per sweep
    int max_sweeps = 10000;
    bool standardize = false; // rescale columns to unit RMS, map beta back
    bool record_objective = false;
    std::optional<Eigen::VectorXd> warm_start;
};

struct Estimate {
    Eigen::VectorXd beta;
    std::vector<int> support; // j with beta[j] != 0; exact-zero test
    double lambda = 0.0;
    double sigma2 = 0.0;      // ||y - X beta||^2 / n
    int iterations = 0;       // completed coordinate sweeps
    bool converged = true;
    std::vector<double> objective_path; // per sweep, when requested
};

struct PrecisionEstimate {
    Eigen::MatrixXd Theta;       // p x p approximate inverse covariance
    Eigen::VectorXd tau2;        // per-row residual scales, all > 0
    Eigen::VectorXd lambda_node; // penalty used for each nodewise fit
};

std::vector<int> support_of(const Eigen::VectorXd& beta);

/// Soft-threshold operator sign(z) * max(|z| - gamma, 0).
double soft_threshold(double z, double gamma);

/// Cyclic coordinate descent for
///   (1/n) ||y - X beta||_2^2 + 2 lambda sum_j w_j |beta_j|
/// with unit weights by default. Coordinates reach exact zeros through
/// soft-thresholding; all-zero columns stay pinned at zero. Non-convergence
/// within max_sweeps is reported through converged=false, not thrown.
Estimate lasso_cd(const Dataset& data, double lambda,
                  const std::optional<Eigen::VectorXd>& weights = std::nullopt,
                  const LassoOptions& opts = {});

// Coordinate descent on the shared Gram matrix X'X/n. Fits along a penalty
// path reuse the cross products and the running coefficients, which makes a
// full sweep cost O(p * #changed coordinates) instead of O(n p). Same
// objective, update rule and convergence test as lasso_cd; minimizers agree
// within solver tolerance. Objective recording is not available here.
class LassoGram {
public:
    /// Keeps a reference to the dataset; it must outlive the solver.
    explicit LassoGram(const Dataset& data);

    /// Continues from the current coefficients (the warm start along a
    /// descending penalty grid). Use reset() for a cold start.
    Estimate fit(double lambda,
                 const std::optional<Eigen::VectorXd>& weights = std::nullopt,
                 const LassoOptions& opts = {});

    void reset();

private:
    const Dataset& data_;
    Eigen::MatrixXd gram_;     // X'X / n
    Eigen::VectorXd xty_;      // X'y / n
    Eigen::VectorXd beta_;
    Eigen::VectorXd residual_corr_; // X'(y - X beta) / n, kept incrementally
};

/// Penalty weights for the second stage given a first-stage estimate:
/// w_j = lambda / max(|beta_j|, lambda). Always in (0, 1].
Eigen::VectorXd conservative_weights(const Eigen::VectorXd& beta_stage1, double lambda);

/// Two-stage lasso: stage one with unit weights, stage two reweighted by
/// conservative_weights. Both stages use the same lambda unless a
/// stage-one override is supplied.
Estimate conservative_lasso(const Dataset& data, double lambda,
                            const LassoOptions& opts = {},
                            std::optional<double> lambda_stage1 = std::nullopt);

/// Rate-respecting default nodewise penalty sqrt(log(p) / n).
double default_lambda_node(Eigen::Index n, Eigen::Index p);

/// Options tight enough for the nodewise residual-scale identity
/// [Theta (X'X/n)]_jj = 1 to hold to 1e-10.
LassoOptions nodewise_default_options();

/// Per-column lasso regressions of x_j on the remaining columns. Row j of
/// Theta is (1/tau2_j) * (unit at j, minus nodewise coefficients elsewhere)
/// with tau2_j = ||x_j - X_{-j} g_j||^2 / n + lambda_j ||g_j||_1.
/// tau2_j <= 1e-10 signals a collinear or constant column and throws.
PrecisionEstimate nodewise_precision(const Eigen::MatrixXd& X,
                                     const Eigen::VectorXd& lambda_node,
                                     const LassoOptions& opts = nodewise_default_options(),
                                     int threads = 1);
PrecisionEstimate nodewise_precision(const Eigen::MatrixXd& X,
                                     double lambda_node = -1.0,
                                     const LassoOptions& opts = nodewise_default_options(),
                                     int threads = 1);

/// One-step correction b = beta_cl + Theta X' (y - X beta_cl) / n.
/// The result is dense, so the support lists every coordinate.
Estimate debias_dcl(const Dataset& data, const Estimate& beta_cl,
                    const PrecisionEstimate& prec);

/// Least squares through a rank-revealing QR; requires p < n and full rank.
Estimate ols(const Dataset& data);

} // namespace hdbound
