#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "cointegra/series.hpp"

namespace cointegra {

/// Unrestricted VAR(p) with intercept, fitted equation by equation.
struct VarFit {
    int lag_order = 0;
    std::vector<std::string> names;
    Eigen::VectorXd intercept;
    std::vector<Eigen::MatrixXd> lag_matrices;  ///< A_1..A_p, each k x k
    Eigen::MatrixXd residuals;                  ///< n_obs x k
    Eigen::MatrixXd sigma;                      ///< residual covariance, divide-by-n
    double log_det_sigma = 0.0;
    double loglik = 0.0;
    int n_obs = 0;

    [[nodiscard]] int num_variables() const noexcept { return static_cast<int>(names.size()); }
    /// Parameters per equation: 1 + k p.
    [[nodiscard]] int params_per_equation() const noexcept { return 1 + num_variables() * lag_order; }
};

/// VAR(p) on the sample t = p..T-1.
VarFit var_fit(const Dataset& d, int p);

/// VAR(p) on the sample t = first..T-1 (first >= p); used to put several lag
/// orders on a common sample.
VarFit var_fit(const Eigen::MatrixXd& levels, int p, int first);

/// Multivariate Gaussian log-likelihood -(n/2)(k(1 + ln 2pi) + ln|Sigma|).
double var_loglik(double log_det_sigma, int n_obs, int k);

struct LagSelectionRow {
    int lag = 0;
    double loglik = 0.0;
    std::optional<double> lr;  ///< absent at lag 0
    double fpe = 0.0;
    double aic = 0.0;
    double sc = 0.0;
    double hq = 0.0;
};

/// Criteria for one row from its log-likelihood: FPE ((n+m)/(n-m))^k |Sigma| and
/// per-observation AIC/SC/HQ with k m parameters, m = 1 + k lag.
LagSelectionRow lag_selection_row(int lag, double loglik, int n_obs, int k);

/// Modified LR (n - m)(ln|Sigma_{lag-1}| - ln|Sigma_lag|) from the two log-likelihoods.
double modified_lr(double loglik_prev, double loglik, int n_obs, int k, int lag);

struct LagSelectionTable {
    std::vector<LagSelectionRow> rows;
    int n_obs = 0;  ///< common sample
    int num_variables = 0;
    int lr_lag = 0;
    int fpe_lag = 0;
    int aic_lag = 0;
    int sc_lag = 0;
    int hq_lag = 0;
};

/**
 * Lag orders 0..pmax on the common sample t = pmax..T-1.
 *
 * LR picks the largest lag whose statistic exceeds the 5% chi-square(k^2)
 * value, testing downward from pmax (0 when none does); the other columns
 * pick their minimum, ties going to the shorter lag.
 */
LagSelectionTable lag_selection_table(const Dataset& d, int pmax);
LagSelectionTable lag_selection_table(const Eigen::MatrixXd& levels, int pmax);

/// Columns as a T x k matrix in dataset order.
Eigen::MatrixXd to_matrix(const Dataset& d);

}  // namespace cointegra
