#include <doctest.h>

#include <cmath>

#include "cointegra/critical_values.hpp"
#include "cointegra/errors.hpp"
#include "cointegra/johansen.hpp"
#include "helpers.hpp"

using namespace cointegra;

namespace {

Eigen::MatrixXd walks(testing::Rng& rng, int T, int k) {
    Eigen::MatrixXd m(T, k);
    for (int j = 0; j < k; ++j) {
        const auto w = rng.random_walk(T);
        for (int t = 0; t < T; ++t) m(t, j) = w[static_cast<std::size_t>(t)];
    }
    return m;
}

}  // namespace

TEST_SUITE("johansen") {
    TEST_CASE("embedded case-3 critical values") {
        const auto cv = [](int n) { return johansen_critical_values(n, JohansenCase::UnrestrictedConstant, Level::P5); };
        CHECK(cv(5).trace == 69.819);
        CHECK(cv(5).maxeig == 33.877);
        CHECK(cv(4).trace == 47.856);
        CHECK(cv(4).maxeig == 27.584);
        CHECK(cv(3).trace == 29.797);
        CHECK(cv(3).maxeig == 21.132);
        CHECK(cv(2).trace == 15.495);
        CHECK(cv(2).maxeig == 14.265);
        CHECK_THROWS_AS((void)cv(13), ConfigError);
        CHECK_THROWS_AS((void)cv(0), ConfigError);
        CHECK_THROWS((void)johansen_critical_values(2, JohansenCase::RestrictedTrend, Level::P5));
    }

    TEST_CASE("closed-form statistics") {
        const auto s = johansen_statistics(Eigen::Vector2d(0.0, 0.0), 30);
        CHECK(s.trace(0) == 0.0);
        CHECK(s.maxeig(1) == 0.0);
        const auto one = johansen_statistics(Eigen::VectorXd::Constant(1, 1.0 - std::exp(-1.0)), 10);
        CHECK(one.maxeig(0) == doctest::Approx(10.0).epsilon(1e-12));

        EigenSolution e;
        e.eigenvalues = Eigen::Vector3d::Zero();
        e.n_obs = 40;
        CHECK(rank_test(e).decided_rank == 0);
        e.eigenvalues = Eigen::Vector3d(1.0, 0.2, 0.1);
        CHECK_THROWS_AS((void)rank_test(e), NumericalError);
    }

    TEST_CASE("statistic identities on random systems") {
        testing::Rng rng(51);
        for (int rep = 0; rep < 30; ++rep) {
            const auto e = johansen_eigen(walks(rng, 60 + rep, 4), VecmSpec{rep % 3, JohansenCase::UnrestrictedConstant});
            CHECK(e.num_variables() == 4);
            for (Eigen::Index i = 0; i < 4; ++i) {
                CHECK(e.eigenvalues(i) >= 0.0);
                CHECK(e.eigenvalues(i) < 1.0);
                if (i > 0) CHECK(e.eigenvalues(i) <= e.eigenvalues(i - 1));
            }
            const auto r = rank_test(e);
            for (std::size_t i = 0; i < r.rows.size(); ++i) {
                CHECK(r.rows[i].trace >= r.rows[i].maxeig);
                CHECK(r.rows[i].maxeig >= 0.0);
                const double next = i + 1 < r.rows.size() ? r.rows[i + 1].trace : 0.0;
                CHECK(std::abs(r.rows[i].trace - next - r.rows[i].maxeig) < 1e-9);
                if (i + 1 < r.rows.size()) CHECK(r.rows[i].trace > r.rows[i + 1].trace);
            }
        }
    }

    TEST_CASE("eigenvalues invariant to rescaling a variable") {
        testing::Rng rng(52);
        auto m = walks(rng, 80, 3);
        const auto a = johansen_eigen(m);
        m.col(1) *= 250.0;
        m.col(2) *= 0.01;
        const auto b = johansen_eigen(m);
        CHECK((a.eigenvalues - b.eigenvalues).cwiseAbs().maxCoeff() < 1e-6);
    }

    TEST_CASE("exact copy is collinear") {
        testing::Rng rng(53);
        Eigen::MatrixXd m = walks(rng, 50, 2);
        m.col(1) = m.col(0);
        CHECK_THROWS_AS((void)johansen_eigen(m), SingularDesignError);
    }

    TEST_CASE("all deterministic cases estimate") {
        testing::Rng rng(54);
        const auto m = walks(rng, 60, 3);
        for (int c = 1; c <= 4; ++c) {
            const auto e = johansen_eigen(m, VecmSpec{1, johansen_case_from_int(c)});
            CHECK(e.eigenvalues.size() == 3);
        }
        CHECK_THROWS_AS((void)johansen_case_from_int(5), ConfigError);
    }

    TEST_CASE("cointegrated pair separates its eigenvalues") {
        testing::Rng rng(55);
        int hits = 0;
        const int reps = 100;
        for (int rep = 0; rep < reps; ++rep) {
            Eigen::MatrixXd m(500, 2);
            const auto x = rng.random_walk(500);
            for (int t = 0; t < 500; ++t) {
                m(t, 0) = x[static_cast<std::size_t>(t)];
                m(t, 1) = x[static_cast<std::size_t>(t)] + rng();
            }
            const auto e = johansen_eigen(m);
            hits += e.eigenvalues(0) > 10.0 * e.eigenvalues(1) ? 1 : 0;
        }
        CHECK(hits >= 90);
    }

    TEST_CASE("independent walks: rank 0 in most seeds") {
        testing::Rng rng(56);
        int zero = 0;
        for (int rep = 0; rep < 100; ++rep) zero += rank_test(johansen_eigen(walks(rng, 100, 5))).decided_rank == 0;
        CHECK(zero > 50);
    }

    TEST_CASE("fixture finds at least one cointegrating vector") {
        const auto d = testing::fixture().dataset.select({"EXP", "EXC", "INF", "FDI", "IMP"});
        const auto r = rank_test(johansen_eigen(d, VecmSpec{1, JohansenCase::UnrestrictedConstant}));
        CHECK(r.decided_rank >= 1);
        CHECK(r.rows.size() == 5);
        CHECK(r.rows[0].trace_cv == 69.819);
    }
}
