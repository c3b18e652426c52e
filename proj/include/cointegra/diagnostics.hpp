#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "cointegra/common.hpp"
#include "cointegra/linreg.hpp"

namespace cointegra {

struct DiagnosticEntry {
    std::string test_name;
    double statistic = 0.0;
    int dof = 0;
    double p_value = 1.0;  ///< chi-square upper tail
};

/// Serial correlation LM: residuals on [X, u_{t-1}..u_{t-p}] with zero-filled
/// start, statistic n R^2 ~ chi2(p).
DiagnosticEntry breusch_godfrey(const RegressionFit& fit, const Eigen::MatrixXd& X, int order);

enum class HetKind { BreuschPagan, WhiteNoCross };
std::string to_string(HetKind k);
HetKind het_kind_from_string(const std::string& s);

/// Squared residuals on X (or on X plus squares of its non-constant columns);
/// n R^2 ~ chi2(number of non-constant auxiliary regressors).
DiagnosticEntry het_test(const RegressionFit& fit, const Eigen::MatrixXd& X, HetKind kind = HetKind::BreuschPagan);

/// n (S^2/6 + (K-3)^2/24) with moments taken about the mean, 1/n divisor.
DiagnosticEntry jarque_bera(const Eigen::VectorXd& u);

/// Refit with powers of the (standardised) fitted values appended;
/// n (R2_aug - R2_base) / (1 - R2_aug) ~ chi2(|powers|).
DiagnosticEntry ramsey_reset(const RegressionFit& fit, const Eigen::MatrixXd& X, const std::vector<int>& powers = {2});

/// Standardised one-step-ahead errors w_t, t = k..T-1 (0-based), from
/// least squares on rows 0..t-1.
Eigen::VectorXd recursive_residuals(const Eigen::VectorXd& y, const Eigen::MatrixXd& X);

struct CusumPath {
    std::vector<int> index;  ///< t = k+1..T (1-based)
    std::vector<double> statistic;
    std::vector<double> lower;
    std::vector<double> upper;
    Level level = Level::P5;

    [[nodiscard]] int exits() const;
    [[nodiscard]] bool stable() const { return exits() == 0; }
    [[nodiscard]] std::string verdict() const { return stable() ? "Stable" : "Unstable"; }
};

/// a [sqrt(T-k) + 2 (t-k)/sqrt(T-k)].
double cusum_bound(int t, int T, int k, Level level);

CusumPath cusum(const Eigen::VectorXd& y, const Eigen::MatrixXd& X, Level level = Level::P5);
CusumPath cusumsq(const Eigen::VectorXd& y, const Eigen::MatrixXd& X, Level level = Level::P5);

struct DiagnosticsOptions {
    int bg_order = 2;
    HetKind het = HetKind::BreuschPagan;
    std::vector<int> reset_powers{2};
    Level level = Level::P5;
};

struct DiagnosticsReport {
    std::vector<DiagnosticEntry> entries;  ///< serial correlation, heteroskedasticity, normality, functional form
    CusumPath cusum;
    CusumPath cusumsq;
};

/// Full battery for y regressed on X; the fit is recomputed with classical covariance.
DiagnosticsReport run_diagnostics(const Eigen::VectorXd& y, const Eigen::MatrixXd& X, const DiagnosticsOptions& opt = {});

}  // namespace cointegra
