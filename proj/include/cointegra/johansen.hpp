#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "cointegra/common.hpp"
#include "cointegra/critical_values.hpp"
#include "cointegra/series.hpp"

namespace cointegra {

struct VecmSpec {
    int diff_lags = 1;  ///< lagged differences in the VECM (VAR order - 1)
    JohansenCase det_case = JohansenCase::UnrestrictedConstant;
};

struct EigenSolution {
    Eigen::VectorXd eigenvalues;   ///< descending, each in [0, 1); one per variable
    Eigen::MatrixXd eigenvectors;  ///< columns normalised so beta' S11 beta = I
    Eigen::MatrixXd s00, s01, s11;
    int n_obs = 0;  ///< effective sample of the auxiliary regressions
    VecmSpec spec;
    std::vector<std::string> names;

    [[nodiscard]] int num_variables() const noexcept { return static_cast<int>(eigenvalues.size()); }
};

/**
 * Reduced-rank regression of the VECM.
 *
 * dy_t and y_{t-1} (with the restricted constant or trend appended for cases
 * 2 and 4) are each regressed on the lagged differences and unrestricted
 * deterministic terms; with residuals R0, R1 and S_ij = R_i'R_j / n, solves
 * |lambda S11 - S10 S00^{-1} S01| = 0 through the Cholesky factor of S11.
 *
 * Throws SingularDesignError naming the variable that makes S00 or S11 singular.
 */
EigenSolution johansen_eigen(const Dataset& d, VecmSpec spec = {});
EigenSolution johansen_eigen(const Eigen::MatrixXd& levels, VecmSpec spec = {},
                             std::vector<std::string> names = {});

struct RankRow {
    int r = 0;  ///< null: rank <= r
    double eigenvalue = 0.0;
    double trace = 0.0;
    double maxeig = 0.0;
    double trace_cv = 0.0;
    double maxeig_cv = 0.0;
    bool trace_rejects = false;
    bool maxeig_rejects = false;
    int trace_stars = 0;   ///< levels (of 1/5/10%) rejected, when tabulated
    int maxeig_stars = 0;
};

struct RankTestResult {
    std::vector<RankRow> rows;
    Level level = Level::P5;
    int n_obs = 0;
    int decided_rank = 0;         ///< first r whose trace null is not rejected
    int maxeig_decided_rank = 0;  ///< same rule on the max-eigenvalue column
};

/// Trace -T sum_{i>r} ln(1 - lambda_i) and max-eigenvalue -T ln(1 - lambda_{r+1})
/// against the embedded case-3 table. T <= 0 uses e.n_obs.
RankTestResult rank_test(const EigenSolution& e, int T = 0, Level level = Level::P5);

/// As above with caller-supplied critical values, indexed by r (n - r common trends).
RankTestResult rank_test(const EigenSolution& e, int T, Level level,
                         const std::vector<JohansenCriticalValues>& critical_values);

/// The two statistics alone, for simulation.
struct JohansenStatistics {
    Eigen::VectorXd trace;   ///< by r
    Eigen::VectorXd maxeig;  ///< by r
};
JohansenStatistics johansen_statistics(const Eigen::VectorXd& eigenvalues, int T);

}  // namespace cointegra
