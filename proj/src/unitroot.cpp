#include "cointegra/unitroot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cointegra/errors.hpp"

namespace cointegra {

namespace {

void require_not_constant(std::span<const double> y) {
    const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
    if (*lo == *hi) {
        throw DegenerateSeriesError("series is constant; the Dickey-Fuller regressor has zero variance");
    }
}

void require_length(std::span<const double> y, int max_lags, Deterministic spec) {
    const int needed = 4 + max_lags + num_deterministic_terms(spec);
    if (static_cast<int>(y.size()) < needed) {
        throw InsufficientDataError("unit-root regression with " + std::to_string(max_lags) + " lags needs " +
                                    std::to_string(needed) + " observations, series has " +
                                    std::to_string(y.size()));
    }
}

std::map<Level, double> df_critical_values(Deterministic spec, int n) {
    std::map<Level, double> out;
    for (Level l : kAllLevels) out[l] = df_critical_value(spec, n, l);
    return out;
}

}  // namespace

bool UnitRootResult::rejects(Level level) const {
    return statistic < critical_values.at(level);
}

int UnitRootResult::stars() const {
    int n = 0;
    for (Level l : kAllLevels) n += rejects(l) ? 1 : 0;
    return n;
}

DfRegression build_df_regression(std::span<const double> y, Deterministic spec, int lags, int first) {
    const int T = static_cast<int>(y.size());
    if (first < lags + 1 || first >= T) {
        throw InsufficientDataError("Dickey-Fuller sample start " + std::to_string(first) + " invalid for " +
                                    std::to_string(T) + " observations and " + std::to_string(lags) + " lags");
    }
    const int n = T - first;
    const int nd = num_deterministic_terms(spec);
    DfRegression reg;
    reg.dy.resize(n);
    reg.X.resize(n, nd + 1 + lags);
    reg.gamma_column = nd;
    for (int r = 0; r < n; ++r) {
        const int t = first + r;
        reg.dy(r) = y[t] - y[t - 1];
        if (nd >= 1) reg.X(r, 0) = 1.0;
        if (nd >= 2) reg.X(r, 1) = static_cast<double>(t);
        reg.X(r, nd) = y[t - 1];
        for (int i = 1; i <= lags; ++i) reg.X(r, nd + i) = y[t - i] - y[t - i - 1];
    }
    return reg;
}

int default_max_lags(int T, int extra_regressors) {
    int k = static_cast<int>(std::floor(12.0 * std::pow(static_cast<double>(T) / 100.0, 0.25)));
    // rows T-1-k, params extra+1+k
    while (k > 0 && (T - 1 - k) - (extra_regressors + 1 + k) < 4) --k;
    return k;
}

double df_tau(const DfRegression& reg) {
    const auto fit = ols_fit(reg.dy, reg.X);
    const double se = std::sqrt(fit.covariance(reg.gamma_column, reg.gamma_column));
    return fit.coefficients(reg.gamma_column) / se;
}

int select_lag_order(std::span<const double> y, Deterministic spec, int max_lags, Criterion criterion) {
    int best = 0;
    double best_value = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= max_lags; ++k) {
        const auto reg = build_df_regression(y, spec, k, max_lags + 1);
        const auto fit = ols_fit(reg.dy, reg.X);
        const double v = criterion_value(info_criteria(fit), criterion);
        if (v < best_value) {
            best_value = v;
            best = k;
        }
    }
    return best;
}

UnitRootResult adf_test(std::span<const double> y, Deterministic spec, LagPolicy lag_policy) {
    const int T = static_cast<int>(y.size());
    require_not_constant(y);
    int lags = 0;
    if (lag_policy.type == LagPolicy::Type::Fixed) {
        if (lag_policy.lags < 0) throw ConfigError("lag order must be non-negative");
        require_length(y, lag_policy.lags, spec);
        lags = lag_policy.lags;
    } else {
        const int max_lags = lag_policy.max_lags >= 0 ? lag_policy.max_lags
                                                      : default_max_lags(T, num_deterministic_terms(spec));
        require_length(y, max_lags, spec);
        lags = select_lag_order(y, spec, max_lags, lag_policy.criterion);
    }
    const auto reg = build_df_regression(y, spec, lags, lags + 1);
    UnitRootResult out;
    out.test = "ADF";
    out.statistic = df_tau(reg);
    out.spec = spec;
    out.lags_or_bandwidth = lags;
    out.n_obs = static_cast<int>(reg.dy.size());
    out.critical_values = df_critical_values(spec, out.n_obs);
    return out;
}

UnitRootResult adf_test(const TimeSeries& s, Deterministic spec, LagPolicy lag_policy) {
    return adf_test(s.values(), spec, lag_policy);
}

UnitRootResult pp_test(std::span<const double> y, Deterministic spec, BandwidthPolicy bandwidth) {
    require_not_constant(y);
    require_length(y, 0, spec);
    const auto reg = build_df_regression(y, spec, 0, 1);
    const auto fit = ols_fit(reg.dy, reg.X);
    const int n = fit.n_obs;
    const int bw = bandwidth.automatic ? automatic_bandwidth(n) : bandwidth.bandwidth;
    if (bw < 0 || bw >= n) {
        throw ConfigError("PP bandwidth " + std::to_string(bw) + " outside [0, " + std::to_string(n) + ")");
    }

    const int g = reg.gamma_column;
    const double se = std::sqrt(fit.covariance(g, g));
    const double tau = fit.coefficients(g) / se;
    const double gamma0 = fit.rss / n;
    const double lambda = newey_west_longrun_variance(fit.residuals, bw);
    const double s = std::sqrt(fit.sigma2);

    UnitRootResult out;
    out.test = "PP";
    out.statistic = tau * std::sqrt(gamma0 / lambda) - (lambda - gamma0) * n * se / (2.0 * std::sqrt(lambda) * s);
    out.spec = spec;
    out.lags_or_bandwidth = bw;
    out.n_obs = n;
    out.critical_values = df_critical_values(spec, n);
    return out;
}

UnitRootResult pp_test(const TimeSeries& s, Deterministic spec, BandwidthPolicy bandwidth) {
    return pp_test(s.values(), spec, bandwidth);
}

}  // namespace cointegra
