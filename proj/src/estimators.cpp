#include "hdbound/estimators.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "hdbound/errors.hpp"
#include "hdbound/parallel.hpp"

namespace hdbound {

void Dataset::validate() const {
    if (X.rows() < 2) throw DimensionError("Dataset: need n >= 2 observations");
    if (X.cols() < 1) throw DimensionError("Dataset: need p >= 1 regressors");
    if (y.size() != X.rows())
        throw DimensionError("Dataset: y has length " + std::to_string(y.size()) +
                             " but X has " + std::to_string(X.rows()) + " rows");
    if (!X.allFinite() || !y.allFinite())
        throw NumericError("Dataset: non-finite entries");
    if (beta_true && beta_true->size() != X.cols())
        throw DimensionError("Dataset: beta_true length does not match p");
}

std::vector<int> support_of(const Eigen::VectorXd& beta) {
    std::vector<int> s;
    for (Eigen::Index j = 0; j < beta.size(); ++j)
        if (beta[j] != 0.0) s.push_back(static_cast<int>(j));
    return s;
}

double soft_threshold(double z, double gamma) {
    if (z > gamma) return z - gamma;
    if (z < -gamma) return z + gamma;
    return 0.0;
}

namespace {

double penalized_objective(const Eigen::VectorXd& resid, const Eigen::VectorXd& beta,
                           const Eigen::VectorXd& w, double lambda, double n) {
    return resid.squaredNorm() / n + 2.0 * lambda * w.cwiseProduct(beta.cwiseAbs()).sum();
}

// One cyclic pass over the given coordinate set; returns the largest
// coordinate change. The residual r = y - X beta is kept current.
double sweep(const Eigen::MatrixXd& X, Eigen::VectorXd& resid, Eigen::VectorXd& beta,
             const Eigen::VectorXd& colsq_n, const Eigen::VectorXd& w, double lambda,
             double inv_n, const std::vector<int>& coords) {
    double max_delta = 0.0;
    for (int j : coords) {
        if (colsq_n[j] <= 0.0) continue; // all-zero column stays at 0
        double rho = X.col(j).dot(resid) * inv_n + colsq_n[j] * beta[j];
        double bj = soft_threshold(rho, lambda * w[j]) / colsq_n[j];
        double delta = bj - beta[j];
        if (delta != 0.0) {
            resid.noalias() -= X.col(j) * delta;
            beta[j] = bj;
            max_delta = std::max(max_delta, std::abs(delta));
        }
    }
    return max_delta;
}

std::vector<int> all_coords(Eigen::Index p) {
    std::vector<int> c(static_cast<std::size_t>(p));
    for (Eigen::Index j = 0; j < p; ++j) c[static_cast<std::size_t>(j)] = static_cast<int>(j);
    return c;
}

} // namespace

Estimate lasso_cd(const Dataset& data, double lambda,
                  const std::optional<Eigen::VectorXd>& weights,
                  const LassoOptions& opts) {
    data.validate();
    if (lambda < 0.0) throw NumericError("lasso_cd: lambda must be >= 0");
    const Eigen::Index n = data.n();
    const Eigen::Index p = data.p();

    Eigen::VectorXd w = weights.value_or(Eigen::VectorXd::Ones(p));
    if (w.size() != p) throw DimensionError("lasso_cd: weights length does not match p");
    if ((w.array() < 0.0).any()) throw NumericError("lasso_cd: negative penalty weight");

    Eigen::VectorXd scale = Eigen::VectorXd::Ones(p);
    const Eigen::MatrixXd* Xp = &data.X;
    Eigen::MatrixXd X_std;
    if (opts.standardize) {
        X_std = data.X;
        for (Eigen::Index j = 0; j < p; ++j) {
            double rms = std::sqrt(X_std.col(j).squaredNorm() / static_cast<double>(n));
            if (rms > 0.0) {
                X_std.col(j) /= rms;
                scale[j] = rms;
            }
        }
        Xp = &X_std;
    }
    const Eigen::MatrixXd& X = *Xp;
    const double inv_n = 1.0 / static_cast<double>(n);
    const Eigen::VectorXd colsq_n = X.colwise().squaredNorm() * inv_n;

    Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
    if (opts.warm_start) {
        if (opts.warm_start->size() != p)
            throw DimensionError("lasso_cd: warm start length does not match p");
        beta = *opts.warm_start;
        if (opts.standardize) beta = beta.cwiseProduct(scale);
    }
    Eigen::VectorXd resid = data.y - X * beta;

    Estimate est;
    est.lambda = lambda;
    const std::vector<int> full = all_coords(p);
    int sweeps = 0;
    bool converged = false;

    auto record = [&]() {
        if (opts.record_objective)
            est.objective_path.push_back(
                penalized_objective(resid, beta, w, lambda, static_cast<double>(n)));
    };

    while (sweeps < opts.max_sweeps) {
        double delta = sweep(X, resid, beta, colsq_n, w, lambda, inv_n, full);
        ++sweeps;
        record();
        if (delta < opts.tol) {
            converged = true;
            break;
        }
        // Iterate the current active set until it settles, then re-check all
        // coordinates with the next full pass.
        std::vector<int> active;
        for (Eigen::Index j = 0; j < p; ++j)
            if (beta[j] != 0.0) active.push_back(static_cast<int>(j));
        while (!active.empty() && sweeps < opts.max_sweeps) {
            double d = sweep(X, resid, beta, colsq_n, w, lambda, inv_n, active);
            ++sweeps;
            record();
            if (d < opts.tol) break;
        }
    }

    if (opts.standardize) beta = beta.cwiseQuotient(scale);
    est.beta = beta;
    est.support = support_of(beta);
    est.sigma2 = (data.y - data.X * beta).squaredNorm() * inv_n;
    est.iterations = sweeps;
    est.converged = converged;
    return est;
}

LassoGram::LassoGram(const Dataset& data) : data_(data) {
    data.validate();
    const double inv_n = 1.0 / static_cast<double>(data.n());
    gram_.setZero(data.p(), data.p());
    gram_.selfadjointView<Eigen::Lower>().rankUpdate(data.X.transpose(), inv_n);
    gram_.triangularView<Eigen::StrictlyUpper>() = gram_.transpose();
    xty_ = data.X.transpose() * data.y * inv_n;
    reset();
}

void LassoGram::reset() {
    beta_ = Eigen::VectorXd::Zero(data_.p());
    residual_corr_ = xty_;
}

Estimate LassoGram::fit(double lambda, const std::optional<Eigen::VectorXd>& weights,
                        const LassoOptions& opts) {
    if (lambda < 0.0) throw NumericError("LassoGram: lambda must be >= 0");
    const Eigen::Index p = data_.p();
    Eigen::VectorXd w = weights.value_or(Eigen::VectorXd::Ones(p));
    if (w.size() != p) throw DimensionError("LassoGram: weights length does not match p");
    if ((w.array() < 0.0).any()) throw NumericError("LassoGram: negative penalty weight");

    auto pass = [&](bool active_only) {
        double max_delta = 0.0;
        for (Eigen::Index j = 0; j < p; ++j) {
            if (active_only && beta_[j] == 0.0) continue;
            double gjj = gram_(j, j);
            if (gjj <= 0.0) continue;
            double rho = residual_corr_[j] + gjj * beta_[j];
            double bj = soft_threshold(rho, lambda * w[j]) / gjj;
            double delta = bj - beta_[j];
            if (delta != 0.0) {
                residual_corr_.noalias() -= gram_.col(j) * delta;
                beta_[j] = bj;
                max_delta = std::max(max_delta, std::abs(delta));
            }
        }
        return max_delta;
    };

    // On a fixed support with fixed signs the penalized objective is a
    // quadratic with stationary point G_AA x = g_A - lambda (w s)_A. A
    // sign-consistent solution never increases the objective, so the jump is
    // safe; the next full sweep re-checks every coordinate. A sign flip
    // means the support is still moving, and sweeping continues instead.
    auto refine_active_set = [&]() {
        std::vector<Eigen::Index> active;
        for (Eigen::Index j = 0; j < p; ++j)
            if (beta_[j] != 0.0) active.push_back(j);
        const Eigen::Index a = static_cast<Eigen::Index>(active.size());
        if (a == 0 || a > data_.n()) return;

        Eigen::MatrixXd sub(a, a);
        Eigen::VectorXd rhs(a);
        for (Eigen::Index r = 0; r < a; ++r) {
            for (Eigen::Index c = 0; c < a; ++c) sub(r, c) = gram_(active[r], active[c]);
            double sign = beta_[active[r]] > 0.0 ? 1.0 : -1.0;
            rhs[r] = xty_[active[r]] - lambda * w[active[r]] * sign;
        }
        Eigen::LDLT<Eigen::MatrixXd> ldlt(sub);
        if (ldlt.info() != Eigen::Success) return;
        Eigen::VectorXd x = ldlt.solve(rhs);
        if (!x.allFinite()) return;
        for (Eigen::Index r = 0; r < a; ++r) {
            if (x[r] == 0.0) return;
            if ((x[r] > 0.0) != (beta_[active[r]] > 0.0)) return;
        }
        residual_corr_ = xty_;
        for (Eigen::Index r = 0; r < a; ++r) {
            beta_[active[r]] = x[r];
            residual_corr_.noalias() -= gram_.col(active[r]) * x[r];
        }
    };

    int sweeps = 0;
    bool converged = false;
    while (sweeps < opts.max_sweeps) {
        double delta = pass(false);
        ++sweeps;
        if (delta < opts.tol) {
            converged = true;
            break;
        }
        int active_budget = 20;
        while (active_budget-- > 0 && sweeps < opts.max_sweeps && pass(true) >= opts.tol)
            ++sweeps;
        ++sweeps;
        refine_active_set();
    }

    Estimate est;
    est.beta = beta_;
    est.support = support_of(beta_);
    est.lambda = lambda;
    est.sigma2 = (data_.y - data_.X * beta_).squaredNorm() / static_cast<double>(data_.n());
    est.iterations = sweeps;
    est.converged = converged;
    return est;
}

Eigen::VectorXd conservative_weights(const Eigen::VectorXd& beta_stage1, double lambda) {
    if (lambda <= 0.0) throw NumericError("conservative_weights: lambda must be > 0");
    return (beta_stage1.cwiseAbs().cwiseMax(lambda)).cwiseInverse() * lambda;
}

Estimate conservative_lasso(const Dataset& data, double lambda,
                            const LassoOptions& opts,
                            std::optional<double> lambda_stage1) {
    if (lambda <= 0.0) throw NumericError("conservative_lasso: lambda must be > 0");
    Estimate stage1 = lasso_cd(data, lambda_stage1.value_or(lambda), std::nullopt, opts);
    Eigen::VectorXd w = conservative_weights(stage1.beta, lambda);
    LassoOptions stage2_opts = opts;
    stage2_opts.warm_start = stage1.beta;
    return lasso_cd(data, lambda, w, stage2_opts);
}

double default_lambda_node(Eigen::Index n, Eigen::Index p) {
    return std::sqrt(std::log(static_cast<double>(p)) / static_cast<double>(n));
}

LassoOptions nodewise_default_options() {
    LassoOptions opts;
    opts.tol = 1e-12;
    opts.max_sweeps = 50000;
    return opts;
}

PrecisionEstimate nodewise_precision(const Eigen::MatrixXd& X,
                                     const Eigen::VectorXd& lambda_node,
                                     const LassoOptions& opts, int threads) {
    const Eigen::Index n = X.rows();
    const Eigen::Index p = X.cols();
    if (p < 2) throw DimensionError("nodewise_precision: need p >= 2");
    if (lambda_node.size() != p)
        throw DimensionError("nodewise_precision: lambda_node length does not match p");
    constexpr double tau2_floor = 1e-10;

    PrecisionEstimate prec;
    prec.Theta = Eigen::MatrixXd::Zero(p, p);
    prec.tau2 = Eigen::VectorXd::Zero(p);
    prec.lambda_node = lambda_node;

    parallel_for(static_cast<std::size_t>(p), threads, [&](std::size_t idx) {
        const Eigen::Index j = static_cast<Eigen::Index>(idx);
        Dataset node;
        node.X.resize(n, p - 1);
        node.X.leftCols(j) = X.leftCols(j);
        node.X.rightCols(p - 1 - j) = X.rightCols(p - 1 - j);
        node.y = X.col(j);
        Estimate fit = lasso_cd(node, lambda_node[j], std::nullopt, opts);
        double tau2 = fit.sigma2 + lambda_node[j] * fit.beta.cwiseAbs().sum();
        if (tau2 <= tau2_floor)
            throw NumericError("nodewise_precision: degenerate column " + std::to_string(j) +
                               " (tau2 = " + std::to_string(tau2) + ")");
        prec.tau2[j] = tau2;
        prec.Theta(j, j) = 1.0 / tau2;
        for (Eigen::Index k = 0; k < p - 1; ++k) {
            Eigen::Index col = k < j ? k : k + 1;
            prec.Theta(j, col) = -fit.beta[k] / tau2;
        }
    });
    return prec;
}

PrecisionEstimate nodewise_precision(const Eigen::MatrixXd& X, double lambda_node,
                                     const LassoOptions& opts, int threads) {
    double lam = lambda_node >= 0.0 ? lambda_node : default_lambda_node(X.rows(), X.cols());
    return nodewise_precision(X, Eigen::VectorXd::Constant(X.cols(), lam), opts, threads);
}

Estimate debias_dcl(const Dataset& data, const Estimate& beta_cl,
                    const PrecisionEstimate& prec) {
    data.validate();
    const Eigen::Index n = data.n();
    const Eigen::Index p = data.p();
    if (beta_cl.beta.size() != p)
        throw DimensionError("debias_dcl: estimate length does not match p");
    if (prec.Theta.rows() != p || prec.Theta.cols() != p)
        throw DimensionError("debias_dcl: precision matrix is not p x p");

    Eigen::VectorXd resid = data.y - data.X * beta_cl.beta;
    Eigen::VectorXd b = beta_cl.beta +
                        prec.Theta * (data.X.transpose() * resid) / static_cast<double>(n);

    Estimate est;
    est.beta = b;
    est.support.resize(static_cast<std::size_t>(p));
    for (Eigen::Index j = 0; j < p; ++j) est.support[static_cast<std::size_t>(j)] = static_cast<int>(j);
    est.lambda = beta_cl.lambda;
    est.sigma2 = (data.y - data.X * b).squaredNorm() / static_cast<double>(n);
    est.iterations = beta_cl.iterations;
    est.converged = beta_cl.converged;
    return est;
}

Estimate ols(const Dataset& data) {
    data.validate();
    const Eigen::Index n = data.n();
    const Eigen::Index p = data.p();
    if (p >= n) throw DimensionError("ols: requires p < n");

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(data.X);
    if (qr.rank() < p) throw NumericError("ols: singular normal equations (rank deficient X)");
    Eigen::VectorXd beta = qr.solve(data.y);

    Estimate est;
    est.beta = beta;
    est.support = support_of(beta);
    est.lambda = 0.0;
    est.sigma2 = (data.y - data.X * beta).squaredNorm() / static_cast<double>(n);
    est.iterations = 0;
    est.converged = true;
    return est;
}

} // namespace hdbound
