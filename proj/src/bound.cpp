#include "hdbound/bound.hpp"

#include <cmath>

#include "hdbound/errors.hpp"

namespace hdbound {

namespace {

void check_domain(const FunctionSpec& f, const Eigen::VectorXd& beta) {
    if (beta.size() != domain_dim(f))
        throw DimensionError("function spec expects dimension " +
                             std::to_string(domain_dim(f)) + ", got " +
                             std::to_string(beta.size()));
}

} // namespace

Eigen::Index domain_dim(const FunctionSpec& f) {
    return std::visit(
        [](const auto& fn) -> Eigen::Index {
            using T = std::decay_t<decltype(fn)>;
            if constexpr (std::is_same_v<T, LinearFn>)
                return fn.D.cols();
            else if constexpr (std::is_same_v<T, QuadraticFn>)
                return fn.S.cols();
            else
                return fn.h.size();
        },
        f);
}

Eigen::Index range_dim(const FunctionSpec& f) {
    if (const auto* lin = std::get_if<LinearFn>(&f)) return lin->D.rows();
    return 1;
}

Eigen::VectorXd eval(const FunctionSpec& f, const Eigen::VectorXd& beta) {
    check_domain(f, beta);
    return std::visit(
        [&](const auto& fn) -> Eigen::VectorXd {
            using T = std::decay_t<decltype(fn)>;
            if constexpr (std::is_same_v<T, LinearFn>) {
                return fn.D * beta;
            } else if constexpr (std::is_same_v<T, QuadraticFn>) {
                Eigen::VectorXd v(1);
                v[0] = beta.dot(fn.S * beta);
                return v;
            } else {
                Eigen::VectorXd v(1);
                v[0] = fn.h.dot(beta);
                return v;
            }
        },
        f);
}

Eigen::MatrixXd derivative(const FunctionSpec& f, const Eigen::VectorXd& beta0) {
    check_domain(f, beta0);
    return std::visit(
        [&](const auto& fn) -> Eigen::MatrixXd {
            using T = std::decay_t<decltype(fn)>;
            if constexpr (std::is_same_v<T, LinearFn>) {
                return fn.D;
            } else if constexpr (std::is_same_v<T, QuadraticFn>) {
                return (2.0 * fn.S * beta0).transpose();
            } else {
                return fn.h.transpose();
            }
        },
        f);
}

Eigen::VectorXd linearization_remainder(const FunctionSpec& f,
                                        const Eigen::VectorXd& beta0,
                                        const Eigen::VectorXd& h) {
    check_domain(f, beta0);
    check_domain(f, h);
    if (const auto* quad = std::get_if<QuadraticFn>(&f)) {
        Eigen::VectorXd v(1);
        v[0] = h.dot(quad->S * h);
        return v;
    }
    return Eigen::VectorXd::Zero(range_dim(f));
}

RegimeSpec classify_regime(double fd_norm, double C, double k_n, double d_n,
                           double tol) {
    if (C <= 0.0) throw NumericError("classify_regime: C must be > 0");
    if (k_n <= 0.0 || d_n <= 0.0)
        throw NumericError("classify_regime: k_n and d_n must be > 0");
    if (fd_norm <= 0.0)
        throw NumericError("classify_regime: derivative norm must be > 0");

    RegimeSpec spec;
    spec.C = C;
    spec.k_n = k_n;
    spec.d_n = d_n;
    auto matches = [tol](double value, double target) {
        return value >= target / (1.0 + tol) && value <= target * (1.0 + tol);
    };
    if (matches(fd_norm, C)) {
        spec.regime = Regime::A;
    } else if (matches(fd_norm, C * k_n)) {
        spec.regime = Regime::B;
    } else if (matches(fd_norm, C / d_n)) {
        spec.regime = Regime::C;
    } else {
        throw NumericError("classify_regime: derivative norm tracks none of C, C*k_n, C/d_n");
    }
    return spec;
}

double RateSpec::r_n() const {
    double value = 0.0;
    switch (family) {
        case RateFamily::SparseRegression:
            if (p < 2.0 || s <= 0.0 || n <= 0.0)
                throw NumericError("rate: sparse regression needs n > 0, p >= 2, s > 0");
            value = std::sqrt(n / std::log(p)) / std::sqrt(s);
            break;
        case RateFamily::Portfolio:
            if (p < 2.0 || s <= 0.0 || n <= 0.0)
                throw NumericError("rate: portfolio needs n > 0, p >= 2, s > 0");
            value = std::sqrt(n) / std::sqrt(std::log(p)) / std::pow(s, 1.5);
            break;
        case RateFamily::RootN:
            if (n <= 0.0) throw NumericError("rate: root-n needs n > 0");
            value = std::sqrt(n);
            break;
        case RateFamily::Series:
            if (n <= 0.0 || p <= 0.0) throw NumericError("rate: series needs n > 0, p > 0");
            value = 1.0 / (std::sqrt(p / n) + std::pow(p, -alpha));
            break;
        case RateFamily::Custom:
            value = custom_rn;
            break;
    }
    if (!(value > 0.0)) throw NumericError("rate: r_n must be positive");
    return value;
}

RateFamily rate_family_from_string(const std::string& s) {
    if (s == "lasso" || s == "sparse") return RateFamily::SparseRegression;
    if (s == "portfolio" || s == "gmv") return RateFamily::Portfolio;
    if (s == "rootn" || s == "dcl") return RateFamily::RootN;
    if (s == "series") return RateFamily::Series;
    if (s == "custom") return RateFamily::Custom;
    throw ParseError("unknown rate family '" + s + "'");
}

const char* to_string(RateFamily f) {
    switch (f) {
        case RateFamily::SparseRegression:
            return "sparse";
        case RateFamily::Portfolio:
            return "portfolio";
        case RateFamily::RootN:
            return "rootn";
        case RateFamily::Series:
            return "series";
        case RateFamily::Custom:
            return "custom";
    }
    return "?";
}

double rate_bound(const RateSpec& rate, const RegimeSpec& regime) {
    double rn = rate.r_n();
    switch (regime.regime) {
        case Regime::A:
            return 1.0 / rn;
        case Regime::B:
            return regime.k_n / rn;
        case Regime::C:
            return 1.0 / (regime.d_n * rn);
    }
    throw NumericError("rate_bound: unknown regime");
}

BoundReport pathwise_check(const FunctionSpec& f, const Eigen::VectorXd& beta_hat,
                           const Eigen::VectorXd& beta0, VectorNorm q) {
    check_domain(f, beta_hat);
    check_domain(f, beta0);

    const Eigen::VectorXd h = beta_hat - beta0;
    const Eigen::MatrixXd fd = derivative(f, beta0);

    BoundReport rep;
    rep.q = q;
    rep.fd_norm = mat_norm(fd, compatible_matrix_norm(q));
    rep.est_err = vec_norm(h, q);
    rep.actual = vec_norm(eval(f, beta_hat) - eval(f, beta0), q);
    rep.linear_term = vec_norm(fd * h, q);
    rep.remainder = vec_norm(linearization_remainder(f, beta0, h), q);
    rep.bound = rep.fd_norm * rep.est_err + rep.remainder;
    rep.holds = rep.actual <= rep.bound + 1e-9 * (1.0 + rep.bound);
    return rep;
}

} // namespace hdbound
