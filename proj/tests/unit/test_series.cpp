#include <doctest.h>

#include <cmath>

#include "cointegra/errors.hpp"
#include "cointegra/series.hpp"
#include "helpers.hpp"

using namespace cointegra;
using testing::series;

TEST_SUITE("series") {
    TEST_CASE("log10 of quoted export shares") {
        const auto s = log10_series(series({19.89, 1.0, 38.58}, "EXP", 1995));
        CHECK(s.name() != "EXP");
        CHECK(s[0] == doctest::Approx(1.2986).epsilon(1e-4));
        CHECK(s[1] == 0.0);
        CHECK(s[2] == doctest::Approx(1.5864).epsilon(1e-4));
    }

    TEST_CASE("log10 rejects non-positive values and names the year") {
        try {
            (void)log10_series(series({1.0, -2.0, 3.0}, "FDI", 2000));
            FAIL("expected DomainError");
        } catch (const DomainError& e) {
            CHECK(std::string(e.what()).find("2001") != std::string::npos);
        }
        CHECK_THROWS_AS((void)log10_series(series({0.0})), DomainError);
    }

    TEST_CASE("log10 preserves ordering") {
        testing::Rng rng(3);
        std::vector<double> v;
        for (int i = 0; i < 50; ++i) v.push_back(std::exp(rng()));
        const auto s = log10_series(series(v));
        for (std::size_t i = 0; i < v.size(); ++i) {
            for (std::size_t j = 0; j < v.size(); ++j) CHECK((v[i] < v[j]) == (s[i] < s[j]));
        }
    }

    TEST_CASE("differences") {
        CHECK(difference(series({5, 5, 5})).values()[0] == 0.0);
        const auto d1 = difference(series({1, 2, 4}, "y", 2000));
        CHECK(std::vector<double>(d1.values().begin(), d1.values().end()) == std::vector<double>{1, 2});
        CHECK(d1.start_year() == 2001);
        const auto d2 = difference(series({1, 2, 4}, "y", 2000), 2);
        CHECK(d2.size() == 1);
        CHECK(d2[0] == 1.0);
        CHECK(d2.start_year() == 2002);
        CHECK_THROWS_AS((void)difference(series({1, 2, 4}), 3), InsufficientDataError);
    }

    TEST_CASE("cumulative sum of differences reconstructs the series") {
        testing::Rng rng(11);
        const auto y = rng.random_walk(40);
        const auto s = series(y);
        const auto d = difference(shift(s, 0), 1);
        double level = s[0];
        CHECK(level == y[0]);
        for (std::size_t i = 0; i < d.size(); ++i) {
            level += d[i];
            CHECK(level == doctest::Approx(y[i + 1]).epsilon(1e-12));
        }
    }

    TEST_CASE("shift aligns lags and leads") {
        const auto s = series({10, 20, 30}, "y", 2000);
        const auto lag = shift(s, 1);
        CHECK(lag.start_year() == 2001);
        CHECK(lag.size() == 2);
        CHECK(lag[0] == 10);
        CHECK(lag[1] == 20);
        const auto lead = shift(s, -1);
        CHECK(lead.start_year() == 2000);
        CHECK(lead[0] == 20);
        CHECK(lead[1] == 30);
        CHECK(shift(s, 0) == s);
        CHECK_THROWS_AS((void)shift(s, 3), InsufficientDataError);
        CHECK_THROWS_AS((void)shift(s, -3), InsufficientDataError);
    }

    TEST_CASE("describe") {
        const auto two = describe(series({0, 2}));
        CHECK(two.mean == 1.0);
        CHECK(two.sd == doctest::Approx(std::sqrt(2.0)));
        const auto one = describe(series({4.2}));
        CHECK(one.sd == 0.0);
        CHECK(one.degenerate);
        CHECK(one.min == 4.2);
        CHECK_THROWS((void)describe(Dataset{}));
    }

    TEST_CASE("sample variance identity") {
        testing::Rng rng(5);
        for (int rep = 0; rep < 20; ++rep) {
            const auto v = rng.white_noise(5 + rep);
            const auto s = describe(series(v));
            double ss = 0.0;
            for (double x : v) ss += (x - s.mean) * (x - s.mean);
            CHECK(s.sd * s.sd * static_cast<double>(v.size() - 1) == doctest::Approx(ss).epsilon(1e-12));
        }
    }

    TEST_CASE("dataset requires aligned, uniquely named series") {
        CHECK_THROWS_AS(Dataset({series({1, 2}, "a", 2000), series({1, 2}, "b", 2001)}), DataError);
        CHECK_THROWS_AS(Dataset({series({1, 2}, "a"), series({1, 2, 3}, "b")}), DataError);
        CHECK_THROWS_AS(Dataset({series({1, 2}, "a"), series({1, 2}, "a")}), DataError);
        const Dataset d({series({1, 2}, "a"), series({3, 4}, "b")});
        CHECK(d.select({"b"}).names() == std::vector<std::string>{"b"});
        CHECK_THROWS_AS((void)d.at("zz"), ConfigError);
    }

    TEST_CASE("fixture descriptive statistics") {
        const auto d = testing::fixture().dataset;
        CHECK(d.num_obs() == 29);
        const auto exp = describe(d.at("EXP"));
        CHECK(std::abs(exp.mean - 1.393) < 0.02);
        CHECK(std::abs(exp.sd - 0.078) < 0.02);
    }
}
