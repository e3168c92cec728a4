#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "hdbound/bound.hpp"
#include "hdbound/errors.hpp"
#include "hdbound/json.hpp"
#include "hdbound/rng.hpp"

using namespace hdbound;

namespace {

Eigen::MatrixXd random_matrix(SplitMix64& rng, int m, int p) {
    Eigen::MatrixXd A(m, p);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < p; ++j) A(i, j) = rng.next_normal();
    return A;
}

Eigen::VectorXd random_vector(SplitMix64& rng, int p) {
    Eigen::VectorXd v(p);
    for (int j = 0; j < p; ++j) v[j] = rng.next_normal();
    return v;
}

Eigen::MatrixXd random_spd(SplitMix64& rng, int p) {
    Eigen::MatrixXd A = random_matrix(rng, p, p);
    return A * A.transpose() / static_cast<double>(p) +
           0.1 * Eigen::MatrixXd::Identity(p, p);
}

} // namespace

TEST_CASE("derivatives of the three families") {
    SplitMix64 rng(1);
    SUBCASE("linear maps differentiate to themselves") {
        Eigen::MatrixXd D = random_matrix(rng, 3, 7);
        FunctionSpec f = LinearFn{D};
        Eigen::VectorXd b0 = random_vector(rng, 7);
        CHECK((derivative(f, b0) - D).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("quadratic forms differentiate to twice the weighted point") {
        Eigen::MatrixXd S = random_spd(rng, 6);
        Eigen::VectorXd b0 = random_vector(rng, 6);
        FunctionSpec f = QuadraticFn{S};
        Eigen::MatrixXd fd = derivative(f, b0);
        REQUIRE(fd.rows() == 1);
        CHECK((fd.transpose() - 2.0 * S * b0).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("basis points differentiate to their own row") {
        Eigen::VectorXd h = random_vector(rng, 5);
        FunctionSpec f = BasisPointFn{h};
        Eigen::MatrixXd fd = derivative(f, random_vector(rng, 5));
        REQUIRE(fd.rows() == 1);
        CHECK((fd.transpose() - h).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("pathwise check at zero displacement") {
    SplitMix64 rng(2);
    Eigen::VectorXd b0 = random_vector(rng, 4);
    FunctionSpec f = QuadraticFn{random_spd(rng, 4)};
    BoundReport rep = pathwise_check(f, b0, b0, VectorNorm::L2);
    CHECK(rep.actual == 0.0);
    CHECK(rep.bound == 0.0);
    CHECK(rep.holds);
}

TEST_CASE("selector matrices bound the head of the error by sqrt(s0) times the full error") {
    SplitMix64 rng(3);
    int s0 = 4, p = 20;
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(s0, p);
    D.leftCols(s0).setIdentity();
    FunctionSpec f = LinearFn{D};
    for (int t = 0; t < 50; ++t) {
        Eigen::VectorXd b0 = random_vector(rng, p);
        Eigen::VectorXd bh = random_vector(rng, p);
        BoundReport rep = pathwise_check(f, bh, b0, VectorNorm::L2);
        CHECK(rep.actual == doctest::Approx((bh - b0).head(s0).norm()));
        CHECK(rep.fd_norm == doctest::Approx(std::sqrt(static_cast<double>(s0))));
        CHECK(rep.holds);
    }
}

TEST_CASE("quadratic hand example decomposes exactly") {
    Eigen::MatrixXd S = Eigen::MatrixXd::Identity(2, 2);
    Eigen::VectorXd b0(2), bh(2);
    b0 << 1, 0;
    bh << 1.1, 0.2;
    BoundReport rep = pathwise_check(QuadraticFn{S}, bh, b0, VectorNorm::L2);
    CHECK(rep.actual == doctest::Approx(0.25));
    CHECK(rep.linear_term == doctest::Approx(0.2));
    CHECK(rep.remainder == doctest::Approx(0.05));
    CHECK(rep.actual == doctest::Approx(rep.linear_term + rep.remainder));
    CHECK(rep.holds);
}

TEST_CASE("pathwise bound holds on random instances in every norm") {
    SplitMix64 rng(4);
    int violations = 0;
    int identity_failures = 0;
    for (int t = 0; t < 1000; ++t) {
        int p = 2 + static_cast<int>(rng.next_u64() % 399);
        Eigen::VectorXd b0 = random_vector(rng, p);
        Eigen::VectorXd bh = b0 + 0.3 * random_vector(rng, p);
        FunctionSpec f = [&]() -> FunctionSpec {
            switch (t % 3) {
                case 0:
                    return LinearFn{random_matrix(rng, 1 + static_cast<int>(rng.next_u64() % 5), p)};
                case 1: {
                    Eigen::MatrixXd A = random_matrix(rng, p, p);
                    return QuadraticFn{0.5 * (A + A.transpose())};
                }
                default:
                    return BasisPointFn{random_vector(rng, p)};
            }
        }();
        for (auto q : {VectorNorm::L1, VectorNorm::L2, VectorNorm::LInf}) {
            BoundReport rep = pathwise_check(f, bh, b0, q);
            if (!rep.holds) ++violations;
            // triangle and compatibility steps of the chain
            if (rep.actual > rep.linear_term + rep.remainder + 1e-9 * (1 + rep.actual))
                ++violations;
            if (rep.linear_term > rep.fd_norm * rep.est_err + 1e-9 * (1 + rep.linear_term))
                ++violations;
        }
        if (std::holds_alternative<QuadraticFn>(f)) {
            const auto& S = std::get<QuadraticFn>(f).S;
            Eigen::VectorXd h = bh - b0;
            double lhs = bh.dot(S * bh) - b0.dot(S * b0);
            double rhs = 2.0 * b0.dot(S * h) + h.dot(S * h);
            double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
            if (std::abs(lhs - rhs) > 1e-10 * scale) ++identity_failures;
        }
    }
    CHECK(violations == 0);
    CHECK(identity_failures == 0);
}

TEST_CASE("quadratic remainder vanishes faster than the displacement") {
    SplitMix64 rng(5);
    Eigen::MatrixXd S = random_spd(rng, 12);
    Eigen::VectorXd b0 = random_vector(rng, 12);
    Eigen::VectorXd h = random_vector(rng, 12);
    FunctionSpec f = QuadraticFn{S};
    double prev_ratio = std::numeric_limits<double>::infinity();
    for (double t : {1.0, 1e-2, 1e-4}) {
        Eigen::VectorXd th = t * h;
        double rem = std::abs(linearization_remainder(f, b0, th)[0]);
        double ratio = rem / th.norm();
        CHECK(ratio < prev_ratio);
        // the remainder is exactly quadratic, so the ratio scales linearly in t
        if (prev_ratio < std::numeric_limits<double>::infinity())
            CHECK(ratio == doctest::Approx(prev_ratio * 1e-2).epsilon(1e-9));
        prev_ratio = ratio;
    }
}

TEST_CASE("regime classification") {
    SUBCASE("constant derivative norm is regime a") {
        double m = 4;
        RegimeSpec r = classify_regime(std::sqrt(m), std::sqrt(m), 1.0, 1.0);
        CHECK(r.regime == Regime::A);
    }
    SUBCASE("norm tracking C k_n is regime b") {
        double s0 = 16.0;
        RegimeSpec r = classify_regime(std::sqrt(s0), std::sqrt(s0) / s0, s0, 1.0);
        CHECK(r.regime == Regime::B);
    }
    SUBCASE("norm tracking C / d_n is regime c") {
        RegimeSpec r = classify_regime(0.01, 1.0, 1.0, 100.0);
        CHECK(r.regime == Regime::C);
    }
    SUBCASE("zero norm violates the hypothesis") {
        CHECK_THROWS_AS(classify_regime(0.0, 1.0, 1.0, 1.0), NumericError);
    }
    SUBCASE("no match is rejected") {
        CHECK_THROWS_AS(classify_regime(3.0, 1.0, 10.0, 10.0), NumericError);
    }
    SUBCASE("classification is scale consistent") {
        SplitMix64 rng(6);
        for (int t = 0; t < 50; ++t) {
            double C = 0.1 + rng.next_uniform();
            double kn = 1.0 + 10.0 * rng.next_uniform();
            RegimeSpec a = classify_regime(C * kn, C, kn, 1.0);
            RegimeSpec b = classify_regime(2.0 * C * kn, 2.0 * C, kn, 1.0);
            CHECK(a.regime == b.regime);
        }
    }
}

TEST_CASE("rate profiles and bound orders") {
    SUBCASE("regime a returns the reciprocal rate") {
        RateSpec rate;
        rate.family = RateFamily::Custom;
        rate.custom_rn = 10.0;
        RegimeSpec reg;
        reg.regime = Regime::A;
        CHECK(rate_bound(rate, reg) == doctest::Approx(0.1));
    }
    SUBCASE("sparse-regression order s0^(3/2) sqrt(log p) / sqrt(n)") {
        double n = 400, p = 100, s0 = 6;
        RateSpec rate;
        rate.family = RateFamily::SparseRegression;
        rate.n = n;
        rate.p = p;
        rate.s = s0;
        RegimeSpec reg;
        reg.regime = Regime::B;
        reg.k_n = s0;
        double expect = std::pow(s0, 1.5) * std::sqrt(std::log(p)) / std::sqrt(n);
        CHECK(rate_bound(rate, reg) == doctest::Approx(expect).epsilon(1e-12));
    }
    SUBCASE("portfolio order s^2 sqrt(log p) / sqrt(n)") {
        double n = 500, p = 80, s = 4;
        RateSpec rate;
        rate.family = RateFamily::Portfolio;
        rate.n = n;
        rate.p = p;
        rate.s = s;
        RegimeSpec reg;
        reg.regime = Regime::B;
        reg.k_n = std::sqrt(s);
        double expect = s * s * std::sqrt(std::log(p)) / std::sqrt(n);
        CHECK(rate_bound(rate, reg) == doctest::Approx(expect).epsilon(1e-12));
    }
    SUBCASE("regime c divides by both sequences") {
        RateSpec rate;
        rate.family = RateFamily::RootN;
        rate.n = 100.0;
        RegimeSpec reg;
        reg.regime = Regime::C;
        reg.d_n = 5.0;
        CHECK(rate_bound(rate, reg) == doctest::Approx(1.0 / 50.0));
    }
    SUBCASE("rates diverge along growing samples") {
        for (auto family : {RateFamily::SparseRegression, RateFamily::Portfolio,
                            RateFamily::RootN, RateFamily::Series}) {
            double prev = 0.0;
            for (double n : {100.0, 1000.0, 10000.0, 100000.0}) {
                RateSpec rate;
                rate.family = family;
                rate.n = n;
                rate.p = 50.0;
                rate.s = 5.0;
                double rn = rate.r_n();
                CHECK(rn > prev);
                prev = rn;
            }
        }
    }
    SUBCASE("invalid rate inputs throw") {
        RateSpec rate;
        rate.family = RateFamily::SparseRegression;
        rate.n = 100;
        rate.p = 1; // log p = 0
        rate.s = 5;
        CHECK_THROWS_AS(rate.r_n(), NumericError);
    }
}

TEST_CASE("bound report serializes every field") {
    SplitMix64 rng(7);
    Eigen::VectorXd b0 = random_vector(rng, 5);
    Eigen::VectorXd bh = b0 + 0.1 * random_vector(rng, 5);
    BoundReport rep = pathwise_check(QuadraticFn{random_spd(rng, 5)}, bh, b0, VectorNorm::L1);
    rep.regime = classify_regime(rep.fd_norm, rep.fd_norm, 1.0, 1.0);
    rep.rate_value = 0.25;
    nlohmann::json j = rep;
    for (const char* key : {"norm", "fd_norm", "est_err", "actual", "linear_term",
                            "remainder", "bound", "holds", "regime", "rate_value"})
        CHECK(j.contains(key));
    CHECK(j["norm"] == "l1");
    CHECK(j["holds"].get<bool>());
}

TEST_CASE("dimension mismatches are rejected") {
    Eigen::MatrixXd D = Eigen::MatrixXd::Ones(2, 3);
    Eigen::VectorXd b = Eigen::VectorXd::Ones(4);
    CHECK_THROWS_AS(eval(FunctionSpec{LinearFn{D}}, b), DimensionError);
    CHECK_THROWS_AS(derivative(FunctionSpec{LinearFn{D}}, b), DimensionError);
}
