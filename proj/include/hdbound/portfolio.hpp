#pragma once

#include <Eigen/Core>
#include <optional>

#include "hdbound/bound.hpp"

namespace hdbound {

struct PortfolioInstance {
    Eigen::MatrixXd Sigma; // p x p symmetric positive-definite covariance
    Eigen::VectorXd w;     // weights summing to one
    std::optional<Eigen::MatrixXd> returns; // n x p when observed

    void validate() const;
};

/// Global-minimum-variance weights Theta 1 / (1' Theta 1), renormalized so
/// they sum to one. |1' Theta 1| <= 1e-10 * p signals a degenerate
/// precision input and throws.
Eigen::VectorXd gmv_weights(const Eigen::MatrixXd& Theta);

/// w' Sigma w, clamped at zero against sign noise from a PSD Sigma.
double oos_variance(const Eigen::VectorXd& w_hat, const Eigen::MatrixXd& Sigma);

/// Variance-error bound through the derivative of the quadratic form:
/// 2 ||Sigma w||_1 ||w_hat - w||_1 plus the exact remainder |h' Sigma h|.
BoundReport variance_error_bound_theorem(const Eigen::VectorXd& w_hat,
                                         const Eigen::VectorXd& w,
                                         const Eigen::MatrixXd& Sigma);

/// Variance-error bound from the term-by-term expansion:
/// ||w_hat - w||_1^2 ||Sigma||_max + 2 ||w_hat - w||_1 ||Sigma||_max ||w||_1.
/// The report's remainder field carries the chain's quadratic term.
BoundReport variance_error_bound_direct(const Eigen::VectorXd& w_hat,
                                        const Eigen::VectorXd& w,
                                        const Eigen::MatrixXd& Sigma);

/// Conservativeness diagnostic ||Sigma||_colsum / ||Sigma||_maxabs, >= 1 for
/// every nonzero matrix.
double div_measure(const Eigen::MatrixXd& Sigma);

/// Duplication matrix D with vec(S) = D vech(S) for symmetric q x q S.
/// D'D is diagonal with entries 1 (diagonal cells) and 2 (off-diagonal).
Eigen::MatrixXd duplication_matrix(int q);

/// Half-vectorization: stacks the lower triangle column by column.
Eigen::VectorXd vech(const Eigen::MatrixXd& S);

/// Inverse of vech for symmetric matrices.
Eigen::MatrixXd unvech(const Eigen::VectorXd& v);

struct VechDerivativeNorm {
    double value = 0.0;    // ||(w' (x) w') D||_F computed directly
    double bound_l2 = 0.0; // sqrt(2) ||w||_2^2
    double bound_l1 = 0.0; // sqrt(2) ||w||_1^2
};

/// Direct norm of the derivative row of w' S w seen as a function of
/// vech(S), with the two closed-form bounds it never exceeds.
VechDerivativeNorm vech_fd_norm(const Eigen::VectorXd& w);

/// Covariance of the rows of a returns matrix; demeaning is explicit so a
/// second-moment matrix can be requested instead.
Eigen::MatrixXd sample_covariance(const Eigen::MatrixXd& returns, bool demean = true);

} // namespace hdbound
