#include "cointegra/varselect.hpp"

#include <cmath>
#include <numbers>

#include "cointegra/distributions.hpp"
#include "cointegra/errors.hpp"
#include "cointegra/linreg.hpp"

namespace cointegra {

Eigen::MatrixXd to_matrix(const Dataset& d) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(d.num_obs()), static_cast<Eigen::Index>(d.num_series()));
    for (std::size_t j = 0; j < d.num_series(); ++j) {
        const auto v = d.series()[j].values();
        for (std::size_t i = 0; i < v.size(); ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v[i];
    }
    return m;
}

double var_loglik(double log_det_sigma, int n_obs, int k) {
    return -0.5 * n_obs * (k * (1.0 + std::log(2.0 * std::numbers::pi)) + log_det_sigma);
}

VarFit var_fit(const Eigen::MatrixXd& levels, int p, int first) {
    const int T = static_cast<int>(levels.rows());
    const int k = static_cast<int>(levels.cols());
    if (p < 0) throw ConfigError("VAR lag order must be non-negative");
    if (first < p) throw ConfigError("VAR sample must start at or after the lag order");
    const int n = T - first;
    const int m = 1 + k * p;
    // Fewer than m + k rows leave the residual covariance rank deficient.
    if (n < m + k) {
        throw InsufficientDataError("VAR(" + std::to_string(p) + ") with " + std::to_string(k) + " variables needs at least " +
                                    std::to_string(m + k) + " observations, has " + std::to_string(n));
    }

    Eigen::MatrixXd Y = levels.bottomRows(n);
    Eigen::MatrixXd Z(n, m);
    Z.col(0).setOnes();
    for (int l = 1; l <= p; ++l) {
        Z.middleCols(1 + k * (l - 1), k) = levels.middleRows(first - l, n);
    }
    if (auto col = first_dependent_column(Z)) {
        throw SingularDesignError("VAR regressor " + std::to_string(*col) + " is collinear", *col);
    }
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(Z);
    Eigen::MatrixXd B = qr.solve(Y);  // m x k

    VarFit fit;
    fit.lag_order = p;
    fit.intercept = B.row(0).transpose();
    for (int l = 1; l <= p; ++l) {
        fit.lag_matrices.push_back(B.middleRows(1 + k * (l - 1), k).transpose());
    }
    fit.residuals = Y - Z * B;
    fit.sigma = fit.residuals.transpose() * fit.residuals / static_cast<double>(n);
    Eigen::LDLT<Eigen::MatrixXd> ldlt(fit.sigma);
    const double det = fit.sigma.determinant();
    if (!(det > 0.0)) {
        throw NumericalError("VAR residual covariance is singular");
    }
    fit.log_det_sigma = ldlt.vectorD().array().log().sum();
    fit.loglik = var_loglik(fit.log_det_sigma, n, k);
    fit.n_obs = n;
    fit.names.resize(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) fit.names[static_cast<std::size_t>(j)] = "y" + std::to_string(j + 1);
    return fit;
}

VarFit var_fit(const Dataset& d, int p) {
    auto fit = var_fit(to_matrix(d), p, p);
    fit.names = d.names();
    return fit;
}

LagSelectionRow lag_selection_row(int lag, double loglik, int n_obs, int k) {
    const double n = n_obs;
    const int m = 1 + k * lag;
    const double log_det = -2.0 * loglik / n - k * (1.0 + std::log(2.0 * std::numbers::pi));
    const auto ic = info_criteria(loglik, n_obs, k * m);
    LagSelectionRow row;
    row.lag = lag;
    row.loglik = loglik;
    row.fpe = std::pow((n + m) / (n - m), k) * std::exp(log_det);
    row.aic = ic.aic;
    row.sc = ic.sc;
    row.hq = ic.hq;
    return row;
}

double modified_lr(double loglik_prev, double loglik, int n_obs, int k, int lag) {
    const int m = 1 + k * lag;
    // ln|S_{l-1}| - ln|S_l| = 2 (l_l - l_{l-1}) / n
    return (n_obs - m) * 2.0 * (loglik - loglik_prev) / n_obs;
}

LagSelectionTable lag_selection_table(const Eigen::MatrixXd& levels, int pmax) {
    if (pmax < 0) throw ConfigError("pmax must be non-negative");
    const int k = static_cast<int>(levels.cols());
    LagSelectionTable table;
    table.num_variables = k;
    for (int lag = 0; lag <= pmax; ++lag) {
        const auto fit = var_fit(levels, lag, pmax);
        table.n_obs = fit.n_obs;
        auto row = lag_selection_row(lag, fit.loglik, fit.n_obs, k);
        if (lag > 0) {
            row.lr = modified_lr(table.rows.back().loglik, fit.loglik, fit.n_obs, k, lag);
        }
        table.rows.push_back(row);
    }

    const double lr_cv = chi2_quantile(0.95, k * k);
    table.lr_lag = 0;
    for (int lag = pmax; lag >= 1; --lag) {
        if (*table.rows[static_cast<std::size_t>(lag)].lr > lr_cv) {
            table.lr_lag = lag;
            break;
        }
    }
    auto argmin = [&](auto field) {
        int best = 0;
        for (int lag = 1; lag <= pmax; ++lag) {
            if (field(table.rows[static_cast<std::size_t>(lag)]) < field(table.rows[static_cast<std::size_t>(best)])) best = lag;
        }
        return best;
    };
    table.fpe_lag = argmin([](const LagSelectionRow& r) { return r.fpe; });
    table.aic_lag = argmin([](const LagSelectionRow& r) { return r.aic; });
    table.sc_lag = argmin([](const LagSelectionRow& r) { return r.sc; });
    table.hq_lag = argmin([](const LagSelectionRow& r) { return r.hq; });
    return table;
}

LagSelectionTable lag_selection_table(const Dataset& d, int pmax) {
    return lag_selection_table(to_matrix(d), pmax);
}

}  // namespace cointegra
