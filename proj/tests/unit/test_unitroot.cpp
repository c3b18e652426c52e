#include <doctest.h>

#include <cmath>

#include "cointegra/critical_values.hpp"
#include "cointegra/errors.hpp"
#include "cointegra/unitroot.hpp"
#include "helpers.hpp"

using namespace cointegra;

TEST_SUITE("unitroot") {
    TEST_CASE("constant series is degenerate") {
        const std::vector<double> flat(30, 2.0);
        CHECK_THROWS_AS((void)adf_test(flat, Deterministic::Constant), DegenerateSeriesError);
        CHECK_THROWS_AS((void)pp_test(flat, Deterministic::Constant), DegenerateSeriesError);
    }

    TEST_CASE("too-short series") {
        CHECK_THROWS_AS((void)adf_test(std::vector<double>{1, 3, 2, 5}, Deterministic::Constant, LagPolicy::fixed(2)),
                        InsufficientDataError);
    }

    TEST_CASE("PP with bandwidth 0 equals the no-lag DF statistic") {
        testing::Rng rng(21);
        for (auto spec : {Deterministic::None, Deterministic::Constant, Deterministic::ConstantTrend}) {
            const auto y = rng.random_walk(80);
            const auto adf = adf_test(y, spec, LagPolicy::fixed(0));
            const auto pp = pp_test(y, spec, BandwidthPolicy::fixed(0));
            CHECK(pp.statistic == doctest::Approx(adf.statistic).epsilon(1e-12));
        }
    }

    TEST_CASE("ADF is invariant to positive affine rescaling") {
        testing::Rng rng(22);
        const auto y = rng.random_walk(60);
        std::vector<double> z(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) z[i] = 3.5 * y[i] - 12.0;
        for (auto spec : {Deterministic::Constant, Deterministic::ConstantTrend}) {
            const auto a = adf_test(y, spec, LagPolicy::fixed(2));
            const auto b = adf_test(z, spec, LagPolicy::fixed(2));
            CHECK(std::abs(a.statistic - b.statistic) < 1e-8);
            CHECK(adf_test(y, spec).lags_or_bandwidth == adf_test(z, spec).lags_or_bandwidth);
        }
    }

    TEST_CASE("lag candidates share one sample") {
        testing::Rng rng(23);
        const auto y = rng.random_walk(50);
        const int kmax = 4;
        for (int k = 0; k <= kmax; ++k) {
            CHECK(build_df_regression(y, Deterministic::Constant, k, kmax + 1).dy.size() == 50 - kmax - 1);
        }
    }

    TEST_CASE("default lag ceiling") {
        CHECK(default_max_lags(100, 1) == 12);
        CHECK(default_max_lags(29, 1) <= 29 / 3);
    }

    TEST_CASE("critical values") {
        for (auto spec : {Deterministic::None, Deterministic::Constant, Deterministic::ConstantTrend}) {
            for (int n : {25, 50, 100, 250, 500, 100000}) {
                const double c1 = df_critical_value(spec, n, Level::P1);
                const double c5 = df_critical_value(spec, n, Level::P5);
                const double c10 = df_critical_value(spec, n, Level::P10);
                CHECK(c1 < c5);
                CHECK(c5 < c10);
            }
        }
        CHECK(std::abs(df_critical_value(Deterministic::Constant, 100000, Level::P5) + 2.86) < 0.03);
        CHECK(std::abs(df_critical_value(Deterministic::ConstantTrend, 100000, Level::P5) + 3.41) < 0.03);
        CHECK(std::abs(df_critical_value(Deterministic::None, 100000, Level::P5) + 1.94) < 0.03);
    }

    TEST_CASE("decision rule is monotone across levels") {
        testing::Rng rng(24);
        for (int rep = 0; rep < 200; ++rep) {
            const auto y = rep % 2 ? rng.random_walk(40) : rng.white_noise(40);
            const auto r = adf_test(y, Deterministic::Constant);
            CHECK(r.rejects(Level::P5) == (r.statistic < r.critical_values.at(Level::P5)));
            if (r.rejects(Level::P1)) CHECK(r.rejects(Level::P5));
            if (r.rejects(Level::P5)) CHECK(r.rejects(Level::P10));
        }
    }

    TEST_CASE("fixture: levels do not reject, differences do") {
        const auto d = testing::fixture().dataset;
        for (const auto& name : d.names()) {
            const auto level = adf_test(d.at(name), Deterministic::Constant);
            const auto diff = adf_test(difference(d.at(name)), Deterministic::Constant);
            CHECK_MESSAGE(!level.rejects(Level::P5), name);
            CHECK_MESSAGE(diff.rejects(Level::P5), name);
        }
        // Published EXP level tau 0.252 and differenced PP -8.239 are vintage dependent; signs of the decision match.
        CHECK(pp_test(difference(d.at("EXP")), Deterministic::Constant).rejects(Level::P1));
    }
}
