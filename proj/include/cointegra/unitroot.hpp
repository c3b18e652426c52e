#pragma once

#include <Eigen/Dense>
#include <map>
#include <span>
#include <string>

#include "cointegra/common.hpp"
#include "cointegra/critical_values.hpp"
#include "cointegra/linreg.hpp"
#include "cointegra/series.hpp"

namespace cointegra {

/// How many lagged differences augment a Dickey-Fuller regression.
struct LagPolicy {
    enum class Type { Fixed, Select };

    Type type = Type::Select;
    int lags = 0;        ///< Fixed
    int max_lags = -1;   ///< Select; -1 = floor(12 (T/100)^(1/4)), trimmed to the sample
    Criterion criterion = Criterion::SC;

    static LagPolicy fixed(int k) { return {Type::Fixed, k, -1, Criterion::SC}; }
    static LagPolicy select(int max_lags = -1, Criterion c = Criterion::SC) { return {Type::Select, 0, max_lags, c}; }
};

struct BandwidthPolicy {
    bool automatic = true;
    int bandwidth = 0;

    static BandwidthPolicy fixed(int m) { return {false, m}; }
    static BandwidthPolicy automatic_rule() { return {true, 0}; }
};

struct UnitRootResult {
    std::string test;  ///< "ADF" or "PP"
    double statistic = 0.0;
    Deterministic spec = Deterministic::Constant;
    int lags_or_bandwidth = 0;
    int n_obs = 0;
    std::map<Level, double> critical_values;

    /// statistic < critical value.
    [[nodiscard]] bool rejects(Level level) const;
    /// Number of levels (1%, 5%, 10%) at which the null is rejected: 0..3.
    [[nodiscard]] int stars() const;
};

/// The Dickey-Fuller regression  dy_t = d_t + gamma y_{t-1} + sum_i delta_i dy_{t-i} + e_t.
struct DfRegression {
    Eigen::VectorXd dy;
    Eigen::MatrixXd X;
    int gamma_column = 0;
};

/// Builds the regression over t = first..T-1 (0-based; first >= lags + 1).
DfRegression build_df_regression(std::span<const double> y, Deterministic spec, int lags, int first);

/// floor(12 (T/100)^(1/4)) reduced until the common-sample regression keeps
/// at least four residual degrees of freedom.
int default_max_lags(int T, int extra_regressors);

/// Chooses the augmentation order on the common sample t = max_lags+1..T-1.
int select_lag_order(std::span<const double> y, Deterministic spec, int max_lags, Criterion criterion);

/// t-ratio of gamma with classical standard errors.
double df_tau(const DfRegression& reg);

UnitRootResult adf_test(const TimeSeries& s, Deterministic spec, LagPolicy lag_policy = LagPolicy::select());
UnitRootResult adf_test(std::span<const double> y, Deterministic spec, LagPolicy lag_policy = LagPolicy::select());

/// Phillips-Perron Z_tau from the no-lag Dickey-Fuller regression with a
/// Bartlett long-run variance of its residuals.
UnitRootResult pp_test(const TimeSeries& s, Deterministic spec,
                       BandwidthPolicy bandwidth = BandwidthPolicy::automatic_rule());
UnitRootResult pp_test(std::span<const double> y, Deterministic spec,
                       BandwidthPolicy bandwidth = BandwidthPolicy::automatic_rule());

}  // namespace cointegra
