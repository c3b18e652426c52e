#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>

namespace cointegra {

/// Covariance estimator attached to a regression fit.
struct CovarianceKind {
    enum class Type { Classical, WhiteHC0, NeweyWest };

    Type type = Type::Classical;
    int bandwidth = 0;  ///< Newey-West only

    static CovarianceKind classical() { return {Type::Classical, 0}; }
    static CovarianceKind white_hc0() { return {Type::WhiteHC0, 0}; }
    static CovarianceKind newey_west(int bandwidth) { return {Type::NeweyWest, bandwidth}; }

    [[nodiscard]] std::string label() const;

    friend bool operator==(const CovarianceKind&, const CovarianceKind&) = default;
};

struct RegressionFit {
    Eigen::VectorXd coefficients;
    Eigen::MatrixXd covariance;
    CovarianceKind covariance_kind;
    Eigen::VectorXd residuals;
    Eigen::VectorXd fitted;
    double rss = 0.0;
    double tss = 0.0;     ///< centred total sum of squares of y
    double sigma2 = 0.0;  ///< rss / (n_obs - n_params)
    double loglik = 0.0;  ///< Gaussian, concentrated: -n/2 (1 + ln 2pi + ln(rss/n))
    double r2 = 0.0;
    int n_obs = 0;
    int n_params = 0;

    [[nodiscard]] Eigen::VectorXd standard_errors() const;
    [[nodiscard]] Eigen::VectorXd t_ratios() const;
    [[nodiscard]] int dof() const noexcept { return n_obs - n_params; }
};

/**
 * Least squares of y on X through a Householder QR of X.
 *
 * Throws SingularDesignError with the index of the first column that is
 * (numerically) a linear combination of the preceding columns, and
 * InsufficientDataError when rows(X) <= cols(X).
 */
RegressionFit ols_fit(const Eigen::VectorXd& y, const Eigen::MatrixXd& X,
                      CovarianceKind cov = CovarianceKind::classical());

/// (X'X)^{-1} for a full-column-rank X, via the same QR route as ols_fit.
Eigen::MatrixXd inverse_gram(const Eigen::MatrixXd& X);

/// First column of X that is linearly dependent on the columns before it, if any.
std::optional<int> first_dependent_column(const Eigen::MatrixXd& X);

/// Sample autocovariance at lag j with the 1/n convention, without demeaning.
double autocovariance(const Eigen::VectorXd& u, int lag);

/**
 * Bartlett-kernel long-run variance: g0 + 2 sum_{j=1..L} (1 - j/(L+1)) g_j.
 *
 * Autocovariances use the 1/n convention, which keeps the estimate
 * non-negative for every input.
 */
double newey_west_longrun_variance(const Eigen::VectorXd& u, int bandwidth);

/// floor(4 (n/100)^(2/9)).
int automatic_bandwidth(int n);

struct InfoCriteria {
    double aic = 0.0;
    double sc = 0.0;
    double hq = 0.0;
};

enum class Criterion { AIC, SC, HQ };

std::string to_string(Criterion c);
Criterion criterion_from_string(const std::string& s);

/// Per-observation criteria: -2l/n plus penalties 2k/n, k ln(n)/n, 2k ln(ln n)/n.
InfoCriteria info_criteria(double loglik, int n_obs, int n_params);
InfoCriteria info_criteria(const RegressionFit& fit);
double criterion_value(const InfoCriteria& ic, Criterion c);

/// Coefficient of determination of y regressed on X (centred, 0 when y is constant).
double centred_r2(const Eigen::VectorXd& y, const Eigen::VectorXd& residuals);

}  // namespace cointegra
