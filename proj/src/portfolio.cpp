#include "hdbound/portfolio.hpp"

#include <cmath>
#include <string>

#include "hdbound/errors.hpp"

namespace hdbound {

void PortfolioInstance::validate() const {
    if (Sigma.rows() != Sigma.cols() || Sigma.rows() == 0)
        throw DimensionError("PortfolioInstance: Sigma must be square and nonempty");
    if (w.size() != Sigma.rows())
        throw DimensionError("PortfolioInstance: weight length does not match Sigma");
    if (std::abs(w.sum() - 1.0) > 1e-10)
        throw NumericError("PortfolioInstance: weights do not sum to one");
    if ((Sigma - Sigma.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw NumericError("PortfolioInstance: Sigma is not symmetric");
    if (returns && returns->cols() != Sigma.rows())
        throw DimensionError("PortfolioInstance: returns width does not match Sigma");
}

Eigen::VectorXd gmv_weights(const Eigen::MatrixXd& Theta) {
    const Eigen::Index p = Theta.rows();
    if (p == 0 || Theta.cols() != p)
        throw DimensionError("gmv_weights: Theta must be square and nonempty");
    Eigen::VectorXd numer = Theta * Eigen::VectorXd::Ones(p);
    double denom = numer.sum();
    if (std::abs(denom) <= 1e-10 * static_cast<double>(p))
        throw NumericError("gmv_weights: 1'Theta 1 is numerically zero");
    Eigen::VectorXd w = numer / denom;
    return w / w.sum(); // exact renormalization
}

double oos_variance(const Eigen::VectorXd& w_hat, const Eigen::MatrixXd& Sigma) {
    if (Sigma.rows() != Sigma.cols() || Sigma.rows() != w_hat.size())
        throw DimensionError("oos_variance: dimension mismatch");
    return std::max(0.0, w_hat.dot(Sigma * w_hat));
}

namespace {

void check_bound_inputs(const Eigen::VectorXd& w_hat, const Eigen::VectorXd& w,
                        const Eigen::MatrixXd& Sigma) {
    if (w_hat.size() != w.size())
        throw DimensionError("variance bound: weight vectors differ in length");
    if (Sigma.rows() != Sigma.cols() || Sigma.rows() != w.size())
        throw DimensionError("variance bound: Sigma dimension mismatch");
}

} // namespace

BoundReport variance_error_bound_theorem(const Eigen::VectorXd& w_hat,
                                         const Eigen::VectorXd& w,
                                         const Eigen::MatrixXd& Sigma) {
    check_bound_inputs(w_hat, w, Sigma);
    const Eigen::VectorXd h = w_hat - w;

    BoundReport rep;
    rep.q = VectorNorm::L1;
    rep.fd_norm = 2.0 * (Sigma * w).cwiseAbs().sum(); // row derivative, l1 as a vector
    rep.est_err = h.cwiseAbs().sum();
    rep.actual = std::abs(w_hat.dot(Sigma * w_hat) - w.dot(Sigma * w));
    rep.linear_term = std::abs(2.0 * w.dot(Sigma * h));
    rep.remainder = std::abs(h.dot(Sigma * h));
    rep.bound = rep.fd_norm * rep.est_err + rep.remainder;
    rep.holds = rep.actual <= rep.bound + 1e-9 * (1.0 + rep.bound);
    return rep;
}

BoundReport variance_error_bound_direct(const Eigen::VectorXd& w_hat,
                                        const Eigen::VectorXd& w,
                                        const Eigen::MatrixXd& Sigma) {
    check_bound_inputs(w_hat, w, Sigma);
    const Eigen::VectorXd h = w_hat - w;
    const double max_abs = mat_norm(Sigma, MatrixNorm::MaxAbs);
    const double h_l1 = h.cwiseAbs().sum();
    const double w_l1 = w.cwiseAbs().sum();

    BoundReport rep;
    rep.q = VectorNorm::L1;
    rep.fd_norm = 2.0 * max_abs * w_l1; // coefficient of the linear term
    rep.est_err = h_l1;
    rep.actual = std::abs(w_hat.dot(Sigma * w_hat) - w.dot(Sigma * w));
    rep.linear_term = std::abs(2.0 * w.dot(Sigma * h));
    rep.remainder = h_l1 * h_l1 * max_abs; // chain's quadratic term
    rep.bound = rep.fd_norm * rep.est_err + rep.remainder;
    rep.holds = rep.actual <= rep.bound + 1e-9 * (1.0 + rep.bound);
    return rep;
}

double div_measure(const Eigen::MatrixXd& Sigma) {
    if (Sigma.rows() == 0 || Sigma.cols() == 0)
        throw DimensionError("div_measure: empty matrix");
    double max_abs = mat_norm(Sigma, MatrixNorm::MaxAbs);
    if (max_abs == 0.0) throw NumericError("div_measure: zero matrix");
    return mat_norm(Sigma, MatrixNorm::ColSum) / max_abs;
}

namespace {

// Index of (i, j), i >= j, in the column-stacked lower triangle.
Eigen::Index vech_index(Eigen::Index i, Eigen::Index j, Eigen::Index q) {
    return j * q - j * (j - 1) / 2 + (i - j);
}

} // namespace

Eigen::MatrixXd duplication_matrix(int q) {
    if (q < 1) throw DimensionError("duplication_matrix: q must be >= 1");
    const Eigen::Index qq = static_cast<Eigen::Index>(q);
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(qq * qq, qq * (qq + 1) / 2);
    for (Eigen::Index j = 0; j < qq; ++j) {
        for (Eigen::Index i = 0; i < qq; ++i) {
            Eigen::Index row = j * qq + i; // vec is column-major
            Eigen::Index col = i >= j ? vech_index(i, j, qq) : vech_index(j, i, qq);
            D(row, col) = 1.0;
        }
    }
    return D;
}

Eigen::VectorXd vech(const Eigen::MatrixXd& S) {
    const Eigen::Index q = S.rows();
    if (q == 0 || S.cols() != q) throw DimensionError("vech: matrix must be square and nonempty");
    Eigen::VectorXd v(q * (q + 1) / 2);
    for (Eigen::Index j = 0; j < q; ++j)
        for (Eigen::Index i = j; i < q; ++i) v[vech_index(i, j, q)] = S(i, j);
    return v;
}

Eigen::MatrixXd unvech(const Eigen::VectorXd& v) {
    // length m = q(q+1)/2 -> q = (sqrt(8m+1) - 1) / 2
    const Eigen::Index m = v.size();
    Eigen::Index q = static_cast<Eigen::Index>((std::sqrt(8.0 * static_cast<double>(m) + 1.0) - 1.0) / 2.0 + 0.5);
    if (q * (q + 1) / 2 != m)
        throw DimensionError("unvech: length is not a triangular number");
    Eigen::MatrixXd S(q, q);
    for (Eigen::Index j = 0; j < q; ++j)
        for (Eigen::Index i = j; i < q; ++i) {
            S(i, j) = v[vech_index(i, j, q)];
            S(j, i) = S(i, j);
        }
    return S;
}

VechDerivativeNorm vech_fd_norm(const Eigen::VectorXd& w) {
    const Eigen::Index q = w.size();
    if (q == 0) throw DimensionError("vech_fd_norm: empty weight vector");

    // Row (w' (x) w') D without forming the q^2-length Kronecker product:
    // entry for vech cell (i, j) is w_i w_j (+ w_j w_i when i != j).
    Eigen::VectorXd row(q * (q + 1) / 2);
    for (Eigen::Index j = 0; j < q; ++j)
        for (Eigen::Index i = j; i < q; ++i)
            row[vech_index(i, j, q)] = (i == j) ? w[i] * w[i] : 2.0 * w[i] * w[j];

    VechDerivativeNorm out;
    out.value = row.norm();
    double l2 = w.squaredNorm();
    double l1 = w.cwiseAbs().sum();
    out.bound_l2 = std::sqrt(2.0) * l2;
    out.bound_l1 = std::sqrt(2.0) * l1 * l1;
    if (out.value > out.bound_l2 * (1.0 + 1e-12) + 1e-12 ||
        out.bound_l2 > out.bound_l1 * (1.0 + 1e-12) + 1e-12)
        throw NumericError("vech_fd_norm: bound chain violated");
    return out;
}

Eigen::MatrixXd sample_covariance(const Eigen::MatrixXd& returns, bool demean) {
    const Eigen::Index n = returns.rows();
    if (n < 2) throw DimensionError("sample_covariance: need at least 2 observations");
    Eigen::MatrixXd centered = returns;
    if (demean) centered.rowwise() -= returns.colwise().mean();
    return centered.transpose() * centered / static_cast<double>(n);
}

} // namespace hdbound
