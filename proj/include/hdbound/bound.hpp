#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <variant>

#include "hdbound/norms.hpp"

namespace hdbound {

// Differentiable targets with analytic derivatives and exact linearization
// remainders: a linear map, a symmetric quadratic form, and a basis-point
// evaluation. Other differentiable targets would need numerical
// derivatives and are out of scope.
struct LinearFn {
    Eigen::MatrixXd D; // f(b) = D b
};

struct QuadraticFn {
    Eigen::MatrixXd S; // f(b) = b' S b with S symmetric
};

struct BasisPointFn {
    Eigen::VectorXd h; // f(b) = h' b
};

using FunctionSpec = std::variant<LinearFn, QuadraticFn, BasisPointFn>;

Eigen::Index domain_dim(const FunctionSpec& f);
Eigen::Index range_dim(const FunctionSpec& f);

Eigen::VectorXd eval(const FunctionSpec& f, const Eigen::VectorXd& beta);

/// Exact derivative matrix at beta0 (m x p). Linear -> D, Quadratic ->
/// 2 beta0' S, BasisPoint -> h'.
Eigen::MatrixXd derivative(const FunctionSpec& f, const Eigen::VectorXd& beta0);

/// Exact remainder f(beta0 + h) - f(beta0) - f_d(beta0) h. Zero for the two
/// linear variants; h' S h for the quadratic form.
Eigen::VectorXd linearization_remainder(const FunctionSpec& f,
                                        const Eigen::VectorXd& beta0,
                                        const Eigen::VectorXd& h);

enum class Regime { A, B, C };

struct RegimeSpec {
    double C = 1.0;   // universal constant, > 0
    double k_n = 1.0; // growing-derivative sequence value
    double d_n = 1.0; // shrinking-derivative sequence value
    Regime regime = Regime::A;
};

/// Labels the derivative-norm behaviour at one evaluation point: regime A
/// when fd_norm matches C within tol, B when it matches C * k_n, C when it
/// matches C / d_n (checked in that priority order). fd_norm <= 0 violates
/// the theorem hypothesis and throws.
RegimeSpec classify_regime(double fd_norm, double C, double k_n, double d_n,
                           double tol = 0.05);

// Named estimator convergence-rate profiles evaluated at concrete (n, p, s).
enum class RateFamily {
    SparseRegression, // sqrt(n / log p) / sqrt(s)
    Portfolio,        // sqrt(n / log p) / s^(3/2)
    RootN,            // sqrt(n)
    Series,           // 1 / (sqrt(p / n) + p^(-alpha))
    Custom,           // user-supplied value
};

struct RateSpec {
    RateFamily family = RateFamily::Custom;
    double n = 1.0;
    double p = 1.0;
    double s = 1.0;
    double alpha = 1.0;     // Series smoothness exponent
    double custom_rn = 1.0; // Custom value

    /// r_n at the configured point; always > 0 or throws.
    double r_n() const;
};

RateFamily rate_family_from_string(const std::string& s);
const char* to_string(RateFamily f);

/// Order of the upper bound under the given regime: 1/r_n (A), k_n/r_n (B),
/// 1/(d_n r_n) (C).
double rate_bound(const RateSpec& rate, const RegimeSpec& regime);

struct BoundReport {
    VectorNorm q = VectorNorm::L2;
    double fd_norm = 0.0;     // matrix norm of the derivative at beta0
    double est_err = 0.0;     // ||beta_hat - beta0||_q
    double actual = 0.0;      // ||f(beta_hat) - f(beta0)||_q
    double linear_term = 0.0; // ||f_d(beta0)(beta_hat - beta0)||_q
    double remainder = 0.0;   // ||remainder(beta_hat - beta0)||_q
    double bound = 0.0;       // fd_norm * est_err + remainder
    bool holds = false;       // actual <= bound + eps
    std::optional<RegimeSpec> regime;
    std::optional<double> rate_value;
};

/// Runs the proof's inequality chain on one realized pair (beta_hat, beta0):
/// triangle step, compatibility step, and the assembled bound, all with the
/// exact remainder so the inequality is checkable in finite samples.
BoundReport pathwise_check(const FunctionSpec& f, const Eigen::VectorXd& beta_hat,
                           const Eigen::VectorXd& beta0, VectorNorm q);

} // namespace hdbound
