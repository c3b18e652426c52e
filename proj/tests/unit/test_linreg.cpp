#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cointegra/errors.hpp"
#include "cointegra/linreg.hpp"
#include "helpers.hpp"

using namespace cointegra;

TEST_SUITE("linreg") {
    TEST_CASE("exact linear system") {
        testing::Rng rng(1);
        const Eigen::MatrixXd X = testing::design(rng, 20, 1);
        const Eigen::VectorXd y = X * Eigen::Vector2d(2.0, 3.0);
        const auto fit = ols_fit(y, X);
        CHECK(fit.coefficients(0) == doctest::Approx(2.0));
        CHECK(fit.coefficients(1) == doctest::Approx(3.0));
        CHECK(fit.residuals.cwiseAbs().maxCoeff() < 1e-12);
        CHECK(fit.r2 == doctest::Approx(1.0));
    }

    TEST_CASE("three-point line") {
        Eigen::MatrixXd X(3, 2);
        X << 1, 0, 1, 1, 1, 2;
        const auto fit = ols_fit(Eigen::Vector3d(1, 2, 4), X);
        CHECK(fit.coefficients(1) == doctest::Approx(1.5).epsilon(1e-12));
        CHECK(fit.coefficients(0) == doctest::Approx(5.0 / 6.0).epsilon(1e-12));
        // rss = 1/6, n = 3
        CHECK(fit.loglik == doctest::Approx(-1.5 * (1 + std::log(2 * std::numbers::pi) + std::log(1.0 / 18.0))));
    }

    TEST_CASE("t-ratio of a quoted coefficient") {
        CHECK(-0.185 / 0.041 == doctest::Approx(-4.512).epsilon(1e-4));
    }

    TEST_CASE("rank-deficient design names the dependent column") {
        testing::Rng rng(2);
        Eigen::MatrixXd X = testing::design(rng, 15, 3);
        X.col(3) = 2.0 * X.col(1) - X.col(2);
        try {
            (void)ols_fit(rng.vector(15), X);
            FAIL("expected SingularDesignError");
        } catch (const SingularDesignError& e) {
            CHECK(e.column() == 3);
        }
        CHECK(first_dependent_column(X) == 3);
    }

    TEST_CASE("residuals are orthogonal to the design and t = coef / SE") {
        testing::Rng rng(3);
        for (int rep = 0; rep < 50; ++rep) {
            const int n = 20 + rep;
            const Eigen::MatrixXd X = testing::design(rng, n, 3);
            const Eigen::VectorXd y = rng.vector(n) + X.col(1);
            for (auto cov : {CovarianceKind::classical(), CovarianceKind::white_hc0(), CovarianceKind::newey_west(2)}) {
                const auto fit = ols_fit(y, X, cov);
                CHECK((X.transpose() * fit.residuals).cwiseAbs().maxCoeff() < 1e-10);
                CHECK(fit.covariance.diagonal().minCoeff() >= 0.0);
                const Eigen::VectorXd t = fit.t_ratios();
                const Eigen::VectorXd se = fit.standard_errors();
                for (Eigen::Index j = 0; j < t.size(); ++j) {
                    CHECK(std::abs(t(j) * se(j) - fit.coefficients(j)) < 1e-10);
                }
            }
        }
    }

    TEST_CASE("loglik is invariant to column order") {
        testing::Rng rng(4);
        const Eigen::MatrixXd X = testing::design(rng, 30, 3);
        const Eigen::VectorXd y = rng.vector(30);
        Eigen::MatrixXd P = X;
        P.col(1).swap(P.col(3));
        const auto a = ols_fit(y, X);
        const auto b = ols_fit(y, P);
        CHECK(a.loglik == doctest::Approx(b.loglik).epsilon(1e-12));
        CHECK(a.coefficients(1) == doctest::Approx(b.coefficients(3)).epsilon(1e-10));
    }

    TEST_CASE("Newey-West long-run variance") {
        testing::Rng rng(5);
        const Eigen::VectorXd u = rng.vector(40);
        CHECK(newey_west_longrun_variance(u, 0) == doctest::Approx(u.squaredNorm() / 40.0));
        // gamma0 = 1, gamma1 = -3/4 with the 1/n convention: 1 + 2 (1/2)(-3/4)
        CHECK(newey_west_longrun_variance(Eigen::Vector4d(1, -1, 1, -1), 1) == doctest::Approx(0.25));
        CHECK_THROWS_AS((void)newey_west_longrun_variance(Eigen::VectorXd(), 0), InsufficientDataError);
        CHECK_THROWS_AS((void)newey_west_longrun_variance(u, 40), ConfigError);
        for (int rep = 0; rep < 200; ++rep) {
            const Eigen::VectorXd v = rng.vector(5 + rep % 30);
            for (int m = 0; m < v.size(); ++m) CHECK(newey_west_longrun_variance(v, m) >= -1e-12);
        }
    }

    TEST_CASE("Newey-West at bandwidth 0 equals the HC0 variance of a mean") {
        testing::Rng rng(6);
        const Eigen::VectorXd u = rng.vector(50);
        const Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(50, 1);
        const auto nw = ols_fit(u, ones, CovarianceKind::newey_west(0));
        const auto hc = ols_fit(u, ones, CovarianceKind::white_hc0());
        CHECK(nw.covariance(0, 0) == doctest::Approx(hc.covariance(0, 0)).epsilon(1e-14));
    }

    TEST_CASE("AR(1) long-run variance with automatic bandwidth") {
        testing::Rng rng(7);
        const int n = 200000;
        Eigen::VectorXd u(n);
        double prev = 0.0;
        for (int t = 0; t < n; ++t) u(t) = prev = 0.5 * prev + rng();
        u.array() -= u.mean();
        const double lrv = newey_west_longrun_variance(u, automatic_bandwidth(n));
        CHECK(std::abs(lrv - 4.0) / 4.0 < 0.15);
    }

    TEST_CASE("automatic bandwidth rule") {
        CHECK(automatic_bandwidth(100) == 4);
        CHECK(automatic_bandwidth(29) == 3);
        CHECK(automatic_bandwidth(26) == 2);
    }

    TEST_CASE("information criteria") {
        const auto zero = info_criteria(-50.0, 25, 0);
        CHECK(zero.aic == doctest::Approx(4.0));
        CHECK(zero.sc == doctest::Approx(4.0));
        CHECK(zero.hq == doctest::Approx(4.0));
        const double n = std::exp(2.0);
        const double l = -10.0;
        const int k = 3;
        const double aic = -2 * l / n + 2 * k / n;
        const double sc = -2 * l / n + k * std::log(n) / n;
        CHECK(sc - aic == doctest::Approx(0.0));
        const auto ic = info_criteria(-10.0, 40, 3);
        CHECK(ic.aic == doctest::Approx(20.0 / 40 + 6.0 / 40));
        CHECK(ic.sc == doctest::Approx(20.0 / 40 + 3 * std::log(40.0) / 40));
        CHECK(ic.hq == doctest::Approx(20.0 / 40 + 6 * std::log(std::log(40.0)) / 40));
    }
}
