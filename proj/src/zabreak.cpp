#include "cointegra/zabreak.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "cointegra/errors.hpp"
#include "cointegra/linreg.hpp"

namespace cointegra {

namespace {

bool has_intercept_break(ZaModel m) { return m == ZaModel::A || m == ZaModel::C; }
bool has_trend_break(ZaModel m) { return m == ZaModel::B || m == ZaModel::C; }
int num_break_terms(ZaModel m) { return m == ZaModel::C ? 2 : 1; }

struct ZaRegression {
    Eigen::VectorXd dy;
    Eigen::MatrixXd X;
    int gamma_column = 0;
};

ZaRegression build(std::span<const double> y, ZaModel model, int b, int lags, int first) {
    const int T = static_cast<int>(y.size());
    const int n = T - first;
    const int nb = num_break_terms(model);
    ZaRegression reg;
    reg.gamma_column = 2 + nb;
    reg.dy.resize(n);
    reg.X.resize(n, reg.gamma_column + 1 + lags);
    for (int r = 0; r < n; ++r) {
        const int t = first + r;
        reg.dy(r) = y[t] - y[t - 1];
        int c = 0;
        reg.X(r, c++) = 1.0;
        reg.X(r, c++) = static_cast<double>(t);
        if (has_intercept_break(model)) reg.X(r, c++) = t >= b ? 1.0 : 0.0;
        if (has_trend_break(model)) reg.X(r, c++) = t >= b ? static_cast<double>(t - b + 1) : 0.0;
        reg.X(r, c++) = y[t - 1];
        for (int i = 1; i <= lags; ++i) reg.X(r, c++) = y[t - i] - y[t - i - 1];
    }
    return reg;
}

double tau_of(const ZaRegression& reg) {
    const auto fit = ols_fit(reg.dy, reg.X);
    return fit.coefficients(reg.gamma_column) / std::sqrt(fit.covariance(reg.gamma_column, reg.gamma_column));
}

// Two pre-break rows keep DT distinct from the trend and DU distinct from a single-row dummy.
bool feasible(int b, int first) { return b - first >= 2; }

int select_lags_for_break(std::span<const double> y, ZaModel model, int b, int max_lags, Criterion criterion) {
    int best = 0;
    double best_value = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= max_lags; ++k) {
        const auto reg = build(y, model, b, k, max_lags + 1);
        const auto fit = ols_fit(reg.dy, reg.X);
        const double v = criterion_value(info_criteria(fit), criterion);
        if (v < best_value) {
            best_value = v;
            best = k;
        }
    }
    return best;
}

}  // namespace

bool ZaResult::rejects(Level level) const {
    return min_statistic < critical_values.at(level);
}

int ZaResult::stars() const {
    int n = 0;
    for (Level l : kAllLevels) n += rejects(l) ? 1 : 0;
    return n;
}

std::pair<int, int> za_break_range(int T, double trimming) {
    if (!(trimming > 0.0 && trimming < 0.5)) {
        throw ConfigError("trimming fraction must lie in (0, 0.5)");
    }
    const int lo = std::max(2, static_cast<int>(std::ceil(trimming * T)));
    const int hi = std::min(T - 2, static_cast<int>(std::floor((1.0 - trimming) * T)));
    return {lo, hi};
}

ZaResult za_test(std::span<const double> y, int start_year, ZaModel model, double trimming, LagPolicy lag_policy) {
    const int T = static_cast<int>(y.size());
    {
        const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
        if (*lo == *hi) throw DegenerateSeriesError("series is constant");
    }
    const auto [b_lo, b_hi] = za_break_range(T, trimming);
    if (b_lo > b_hi) {
        throw InsufficientDataError("trimmed break window is empty for " + std::to_string(T) + " observations");
    }
    const int extra = 2 + num_break_terms(model);
    int max_lags = 0;
    if (lag_policy.type == LagPolicy::Type::Fixed) {
        if (lag_policy.lags < 0) throw ConfigError("lag order must be non-negative");
        max_lags = lag_policy.lags;
    } else {
        max_lags = lag_policy.max_lags >= 0 ? lag_policy.max_lags : default_max_lags(T, extra);
    }
    if ((T - 1 - max_lags) - (extra + 1 + max_lags) < 1) {
        throw InsufficientDataError("Zivot-Andrews regression with " + std::to_string(max_lags) + " lags needs more than " +
                                    std::to_string(T) + " observations");
    }

    ZaResult out;
    out.model = model;
    out.trimming = trimming;
    out.min_statistic = std::numeric_limits<double>::infinity();
    for (int b = b_lo; b <= b_hi; ++b) {
        int lags = 0;
        if (lag_policy.type == LagPolicy::Type::Fixed) {
            lags = lag_policy.lags;
        } else {
            const int kmax = std::min(max_lags, b - 3);
            if (kmax < 0) continue;
            lags = select_lags_for_break(y, model, b, kmax, lag_policy.criterion);
        }
        if (!feasible(b, lags + 1)) continue;
        const double tau = tau_of(build(y, model, b, lags, lags + 1));
        const int year = start_year + b;
        out.per_candidate[year] = tau;
        if (tau < out.min_statistic) {
            out.min_statistic = tau;
            out.break_year = year;
            out.lags = lags;
        }
    }
    if (out.per_candidate.empty()) {
        throw InsufficientDataError("no feasible break candidate after trimming");
    }
    for (Level l : kAllLevels) out.critical_values[l] = za_critical_value(model, l);
    return out;
}

ZaResult za_test(const TimeSeries& s, ZaModel model, double trimming, LagPolicy lag_policy) {
    return za_test(s.values(), s.start_year(), model, trimming, lag_policy);
}

double za_statistic_no_lags(std::span<const double> y, ZaModel model, double trimming) {
    const int T = static_cast<int>(y.size());
    const auto [b_lo, b_hi] = za_break_range(T, trimming);
    if (b_lo > b_hi || b_lo < 2) {
        throw InsufficientDataError("trimmed break window is empty");
    }
    // Rows t = 1..T-1; time is scaled by 1/T, which leaves every t-ratio unchanged.
    const double scale = 1.0 / T;
    enum { ONE, TAU, TAU2, Y, TAUY, D, TAUD, NSUM };
    std::vector<std::array<double, NSUM>> suffix(static_cast<std::size_t>(T + 1));
    suffix[static_cast<std::size_t>(T)].fill(0.0);
    double s_yy = 0.0, s_yd = 0.0, s_dd = 0.0;
    for (int t = T - 1; t >= 1; --t) {
        const double tau = t * scale;
        const double lag = y[t - 1];
        const double d = y[t] - y[t - 1];
        auto& s = suffix[static_cast<std::size_t>(t)];
        s = suffix[static_cast<std::size_t>(t + 1)];
        s[ONE] += 1.0;
        s[TAU] += tau;
        s[TAU2] += tau * tau;
        s[Y] += lag;
        s[TAUY] += tau * lag;
        s[D] += d;
        s[TAUD] += tau * d;
        s_yy += lag * lag;
        s_yd += lag * d;
        s_dd += d * d;
    }
    const auto& all = suffix[1];
    const int n = T - 1;
    const bool du = has_intercept_break(model);
    const bool dt = has_trend_break(model);
    const int p = 3 + (du ? 1 : 0) + (dt ? 1 : 0);
    const int g = p - 1;  // y_{t-1} last

    double best = std::numeric_limits<double>::infinity();
    Eigen::MatrixXd xtx(p, p);
    Eigen::VectorXd xtd(p);
    for (int b = b_lo; b <= b_hi; ++b) {
        const auto& s = suffix[static_cast<std::size_t>(b)];
        const double c = (b - 1) * scale;
        // Cross moments of each non-stochastic regressor with y_{t-1} and dy_t.
        struct Col {
            double y, d;
        };
        std::vector<Col> cols;
        cols.push_back({all[Y], all[D]});
        cols.push_back({all[TAUY], all[TAUD]});
        if (du) cols.push_back({s[Y], s[D]});
        if (dt) cols.push_back({s[TAUY] - c * s[Y], s[TAUD] - c * s[D]});

        const int nb = static_cast<int>(cols.size());
        for (int i = 0; i < nb; ++i) {
            xtx(i, g) = xtx(g, i) = cols[static_cast<std::size_t>(i)].y;
            xtd(i) = cols[static_cast<std::size_t>(i)].d;
        }
        xtx(g, g) = s_yy;
        xtd(g) = s_yd;
        // Products among {1, tau, DU, DT}.
        xtx(0, 0) = all[ONE];
        xtx(0, 1) = xtx(1, 0) = all[TAU];
        xtx(1, 1) = all[TAU2];
        int idx = 2;
        int du_idx = -1, dt_idx = -1;
        if (du) du_idx = idx++;
        if (dt) dt_idx = idx++;
        if (du) {
            xtx(0, du_idx) = xtx(du_idx, 0) = s[ONE];
            xtx(1, du_idx) = xtx(du_idx, 1) = s[TAU];
            xtx(du_idx, du_idx) = s[ONE];
        }
        if (dt) {
            xtx(0, dt_idx) = xtx(dt_idx, 0) = s[TAU] - c * s[ONE];
            xtx(1, dt_idx) = xtx(dt_idx, 1) = s[TAU2] - c * s[TAU];
            xtx(dt_idx, dt_idx) = s[TAU2] - 2.0 * c * s[TAU] + c * c * s[ONE];
        }
        if (du && dt) {
            xtx(du_idx, dt_idx) = xtx(dt_idx, du_idx) = s[TAU] - c * s[ONE];
        }

        Eigen::LDLT<Eigen::MatrixXd> ldlt(xtx);
        const Eigen::VectorXd beta = ldlt.solve(xtd);
        const double rss = s_dd - beta.dot(xtd);
        const double sigma2 = rss / (n - p);
        const Eigen::VectorXd eg = Eigen::VectorXd::Unit(p, g);
        const double var_g = sigma2 * ldlt.solve(eg)(g);
        const double tau = beta(g) / std::sqrt(var_g);
        if (tau < best) best = tau;
    }
    return best;
}

}  // namespace cointegra
