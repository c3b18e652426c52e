#include <doctest.h>

#include <cmath>

#include "cointegra/distributions.hpp"
#include "cointegra/dols.hpp"
#include "cointegra/errors.hpp"
#include "helpers.hpp"

using namespace cointegra;

namespace {

struct System {
    std::vector<double> y;
    Eigen::MatrixXd x;
};

// y = 1 + 0.5 x1 - 0.3 x2 + u, x random walks, u AR(phi).
System cointegrated(testing::Rng& rng, int T, double phi) {
    System s{std::vector<double>(static_cast<std::size_t>(T)), Eigen::MatrixXd(T, 2)};
    const auto a = rng.random_walk(T);
    const auto b = rng.random_walk(T);
    double u = 0.0;
    for (int t = 0; t < T; ++t) {
        u = phi * u + rng();
        s.x(t, 0) = a[static_cast<std::size_t>(t)];
        s.x(t, 1) = b[static_cast<std::size_t>(t)];
        s.y[static_cast<std::size_t>(t)] = 1.0 + 0.5 * s.x(t, 0) - 0.3 * s.x(t, 1) + u;
    }
    return s;
}

}  // namespace

TEST_SUITE("dols") {
    TEST_CASE("order (0,0) with bandwidth 0 is the static regression") {
        testing::Rng rng(61);
        const auto s = cointegrated(rng, 40, 0.3);
        DolsSpec spec{0, 0, BandwidthPolicy::fixed(0)};
        const auto fit = dols_fit(s.y, s.x, {"a", "b"}, spec);
        Eigen::MatrixXd X(40, 3);
        X.col(0).setOnes();
        X.rightCols(2) = s.x;
        const auto ols = ols_fit(Eigen::Map<const Eigen::VectorXd>(s.y.data(), 40), X);
        CHECK(fit.n_obs == 40);
        CHECK(std::abs(fit.longrun_coefficients(0) - ols.coefficients(1)) < 1e-8);
        CHECK(std::abs(fit.longrun_coefficients(1) - ols.coefficients(2)) < 1e-8);
        CHECK(std::abs(fit.longrun_coefficients(2) - ols.coefficients(0)) < 1e-8);
        CHECK((fit.residuals - ols.residuals).cwiseAbs().maxCoeff() < 1e-8);
        CHECK(fit.nuisance_coefficients.size() == 0);
    }

    TEST_CASE("design layout and names") {
        testing::Rng rng(62);
        const auto s = cointegrated(rng, 30, 0.0);
        const auto d = dols_design(s.y, s.x, {"A", "B"}, 1, 2, 3, 28);
        CHECK(d.X.rows() == 26);
        CHECK(d.X.cols() == 1 + 2 + 2 * 4);
        CHECK(d.names[0] == "C");
        CHECK(d.names[3] == "D(A,-2)");
        CHECK(d.names[7] == "D(A)");
        CHECK(d.names[9] == "D(A,+1)");
        // row 0 is t = 3; D(A,-2) is x(1) - x(0)
        CHECK(d.X(0, 3) == s.x(1, 0) - s.x(0, 0));
        CHECK(d.X(0, 9) == s.x(4, 0) - s.x(3, 0));
        CHECK_THROWS_AS((void)dols_design(s.y, s.x, {"A", "B"}, 1, 2, 2, 28), InsufficientDataError);
    }

    TEST_CASE("t = coef / SE; residuals orthogonal to the augmented design") {
        testing::Rng rng(63);
        for (int rep = 0; rep < 20; ++rep) {
            const auto s = cointegrated(rng, 60, 0.3);
            const auto fit = dols_fit(s.y, s.x, {"a", "b"}, DolsSpec{1 + rep % 2, 1, BandwidthPolicy::automatic_rule()});
            for (Eigen::Index j = 0; j < fit.t_ratios.size(); ++j) {
                CHECK(std::abs(fit.t_ratios(j) * fit.hac_standard_errors(j) - fit.longrun_coefficients(j)) < 1e-10);
                CHECK(fit.p_values(j) >= 0.0);
                CHECK(fit.p_values(j) <= 1.0);
            }
            CHECK((fit.design.transpose() * fit.residuals).cwiseAbs().maxCoeff() < 1e-8);
            CHECK(fit.longrun_names.back() == "C");
            CHECK(static_cast<Eigen::Index>(fit.nuisance_names.size()) == fit.nuisance_coefficients.size());
        }
    }

    TEST_CASE("rescaling a regressor rescales its coefficient only") {
        testing::Rng rng(64);
        auto s = cointegrated(rng, 50, 0.3);
        const auto a = dols_fit(s.y, s.x, {"a", "b"});
        s.x.col(0) *= 4.0;
        const auto b = dols_fit(s.y, s.x, {"a", "b"});
        CHECK(std::abs(b.longrun_coefficients(0) - a.longrun_coefficients(0) / 4.0) < 1e-8);
        CHECK(std::abs(b.t_ratios(0) - a.t_ratios(0)) < 1e-8);
        CHECK(std::abs(b.t_ratios(1) - a.t_ratios(1)) < 1e-8);
    }

    TEST_CASE("HAC interval covers the true slope") {
        testing::Rng rng(65);
        int covered = 0;
        const int reps = 500;
        for (int rep = 0; rep < reps; ++rep) {
            auto s = cointegrated(rng, 300, 0.3);
            const auto fit = dols_fit(s.y, s.x, {"a", "b"}, DolsSpec{1, 1, BandwidthPolicy::automatic_rule()});
            covered += std::abs(fit.longrun_coefficients(0) - 0.5) < 1.96 * fit.hac_standard_errors(0) ? 1 : 0;
        }
        CHECK(covered >= 0.9 * reps);
    }

    TEST_CASE("lead/lag selection") {
        testing::Rng rng(66);
        const auto s = cointegrated(rng, 40, 0.0);
        CHECK(select_leads_lags(s.y, s.x, 0).leads == 0);
        int zero = 0;
        for (int rep = 0; rep < 100; ++rep) {
            const auto w = cointegrated(rng, 80, 0.0);
            zero += select_leads_lags(w.y, w.x, 2).leads == 0 ? 1 : 0;
        }
        CHECK(zero > 50);
        CHECK_THROWS_AS((void)select_leads_lags(s.y, s.x, -1), ConfigError);
    }

    TEST_CASE("errors") {
        testing::Rng rng(67);
        const auto s = cointegrated(rng, 12, 0.0);
        CHECK_THROWS_AS((void)dols_fit(s.y, s.x, {"a", "b"}, DolsSpec{2, 2, BandwidthPolicy::automatic_rule()}),
                        InsufficientDataError);
        CHECK_THROWS_AS((void)dols_fit(s.y, s.x, {"a", "b"}, DolsSpec{-1, 0, BandwidthPolicy::automatic_rule()}),
                        ConfigError);
        const auto fx = testing::fixture().dataset;
        CHECK_THROWS_AS((void)dols_fit(fx, "EXP", {"EXP", "EXC"}), ConfigError);
    }

    TEST_CASE("fixture order selection frozen at max order 1") {
        const auto fx = testing::fixture().dataset;
        const std::vector<std::string> regs{"EXC", "INF", "FDI", "IMP"};
        const auto spec = select_leads_lags(fx, "EXP", regs, 1);
        // SC prefers the static design on the 29-year sample.
        CHECK(spec.leads == 0);
        CHECK(spec.lags == 0);
    }

    TEST_CASE("fixture long-run estimates: magnitudes of the exchange-rate and import terms") {
        const auto fx = testing::fixture().dataset;
        const auto fit = dols_fit(fx, "EXP", {"EXC", "INF", "FDI", "IMP"});
        CHECK(fit.n_obs == 26);
        CHECK(std::abs(fit.longrun_coefficients(0) - -0.185) < 0.15);
        CHECK(std::abs(fit.longrun_coefficients(3) - 0.849) < 0.4);
        CHECK(fit.longrun_coefficients(0) < 0.0);
        CHECK(fit.longrun_coefficients(3) > 0.0);
    }
}
