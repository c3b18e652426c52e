#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "cointegra/linreg.hpp"
#include "cointegra/series.hpp"
#include "cointegra/unitroot.hpp"

namespace cointegra {

/// Leads and lags of the differenced regressors. Order (0, 0) is the static
/// cointegrating regression; any positive order also includes dx_t itself.
struct DolsSpec {
    int leads = 1;
    int lags = 1;
    BandwidthPolicy hac = BandwidthPolicy::automatic_rule();

    friend bool operator==(const DolsSpec& a, const DolsSpec& b) {
        return a.leads == b.leads && a.lags == b.lags && a.hac.automatic == b.hac.automatic &&
               a.hac.bandwidth == b.hac.bandwidth;
    }
};

struct DolsFit {
    std::vector<std::string> longrun_names;  ///< regressors in input order, then "C"
    Eigen::VectorXd longrun_coefficients;
    Eigen::VectorXd hac_standard_errors;
    Eigen::VectorXd t_ratios;
    Eigen::VectorXd p_values;  ///< two-sided, Student t with n - k dof
    std::vector<std::string> nuisance_names;
    Eigen::VectorXd nuisance_coefficients;
    Eigen::VectorXd residuals;
    Eigen::VectorXd y;        ///< dependent variable over the estimation sample
    Eigen::MatrixXd design;   ///< [1, x, leads/lags of dx]
    RegressionFit regression; ///< underlying OLS with classical covariance
    double longrun_variance = 0.0;
    int bandwidth = 0;
    int first_year = 0;
    int n_obs = 0;
    DolsSpec spec;
};

/// Rows t with first <= t <= last (0-based) of the DOLS design; throws if a
/// lead or lag would fall outside the series.
struct DolsDesign {
    Eigen::VectorXd y;
    Eigen::MatrixXd X;
    std::vector<std::string> names;
};
DolsDesign dols_design(std::span<const double> y, const Eigen::MatrixXd& x, const std::vector<std::string>& x_names,
                       int leads, int lags, int first, int last);

/**
 * OLS of y_t on (1, x_t, dx_{t-lags}..dx_{t+leads}).
 *
 * Long-run covariance is lambda (X'X)^{-1} n/(n - k), with lambda the Bartlett
 * long-run variance of the residuals; at bandwidth 0 this is the classical OLS
 * covariance.
 */
DolsFit dols_fit(const Dataset& d, const std::string& dependent, const std::vector<std::string>& regressors,
                 DolsSpec spec = {});
DolsFit dols_fit(std::span<const double> y, const Eigen::MatrixXd& x, const std::vector<std::string>& x_names,
                 DolsSpec spec = {}, int start_year = 0);

/// Symmetric order q = p in 0..max_order minimising SC on the common sample.
DolsSpec select_leads_lags(const Dataset& d, const std::string& dependent, const std::vector<std::string>& regressors,
                           int max_order);
DolsSpec select_leads_lags(std::span<const double> y, const Eigen::MatrixXd& x, int max_order);

}  // namespace cointegra
