#include "cointegra/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "cointegra/critical_values.hpp"
#include "cointegra/distributions.hpp"
#include "cointegra/errors.hpp"

namespace cointegra {

namespace {

bool is_constant_column(const Eigen::MatrixXd& X, Eigen::Index j) {
    const double v = X(0, j);
    return v != 0.0 && (X.col(j).array() == v).all();
}

// Residuals that are zero up to rounding: the fit is exact.
bool negligible(const Eigen::VectorXd& u, const Eigen::VectorXd& scale) {
    return u.cwiseAbs().maxCoeff() <= 1e-10 * std::max(1.0, scale.cwiseAbs().maxCoeff());
}

DiagnosticEntry chi2_entry(std::string name, double stat, int dof) {
    DiagnosticEntry e;
    e.test_name = std::move(name);
    e.statistic = std::max(stat, 0.0);
    e.dof = dof;
    e.p_value = chi2_upper_tail(e.statistic, dof);
    return e;
}

void check_fit(const RegressionFit& fit, const Eigen::MatrixXd& X) {
    if (fit.residuals.size() != X.rows()) throw ConfigError("residuals and design have different lengths");
}

}  // namespace

std::string to_string(HetKind k) {
    return k == HetKind::BreuschPagan ? "breusch-pagan" : "white-no-cross";
}

HetKind het_kind_from_string(const std::string& s) {
    if (s == "breusch-pagan" || s == "bp" || s == "bpg") return HetKind::BreuschPagan;
    if (s == "white-no-cross" || s == "white") return HetKind::WhiteNoCross;
    throw ConfigError("unknown heteroskedasticity test '" + s + "'");
}

DiagnosticEntry breusch_godfrey(const RegressionFit& fit, const Eigen::MatrixXd& X, int order) {
    check_fit(fit, X);
    const auto n = X.rows();
    if (order < 1) throw ConfigError("serial correlation order must be at least 1");
    if (order >= n) throw ConfigError("serial correlation order " + std::to_string(order) + " >= sample size");
    const std::string name = "serial correlation (BG, order " + std::to_string(order) + ")";
    const Eigen::VectorXd& u = fit.residuals;
    if (negligible(u, fit.fitted)) return chi2_entry(name, 0.0, order);

    Eigen::MatrixXd aux(n, X.cols() + order);
    aux.leftCols(X.cols()) = X;
    for (int j = 1; j <= order; ++j) {
        for (Eigen::Index t = 0; t < n; ++t) aux(t, X.cols() + j - 1) = t >= j ? u(t - j) : 0.0;
    }
    const auto a = ols_fit(u, aux);
    return chi2_entry(name, static_cast<double>(n) * centred_r2(u, a.residuals), order);
}

DiagnosticEntry het_test(const RegressionFit& fit, const Eigen::MatrixXd& X, HetKind kind) {
    check_fit(fit, X);
    const auto n = X.rows();
    std::vector<Eigen::Index> nonconst;
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
        if (!is_constant_column(X, j)) nonconst.push_back(j);
    }
    const int p = static_cast<int>(nonconst.size()) * (kind == HetKind::WhiteNoCross ? 2 : 1);
    if (p == 0) throw SingularDesignError("heteroskedasticity test needs a non-constant regressor", 0);
    const std::string name = kind == HetKind::BreuschPagan ? "heteroskedasticity (Breusch-Pagan)"
                                                           : "heteroskedasticity (White, no cross terms)";

    Eigen::MatrixXd aux(n, 1 + p);
    aux.col(0).setOnes();
    int c = 1;
    for (auto j : nonconst) aux.col(c++) = X.col(j);
    if (kind == HetKind::WhiteNoCross) {
        for (auto j : nonconst) aux.col(c++) = X.col(j).array().square().matrix();
    }
    if (auto col = first_dependent_column(aux)) {
        throw SingularDesignError("heteroskedasticity auxiliary design is singular at column " + std::to_string(*col),
                                  *col);
    }
    const Eigen::VectorXd u2 = fit.residuals.array().square().matrix();
    if (negligible(fit.residuals, fit.fitted) || (u2.array() == u2(0)).all()) return chi2_entry(name, 0.0, p);
    const auto a = ols_fit(u2, aux);
    return chi2_entry(name, static_cast<double>(n) * centred_r2(u2, a.residuals), p);
}

DiagnosticEntry jarque_bera(const Eigen::VectorXd& u) {
    const auto n = u.size();
    if (n < 4) throw InsufficientDataError("Jarque-Bera needs at least 4 observations");
    const Eigen::ArrayXd d = u.array() - u.mean();
    const double m2 = d.square().mean();
    if (!(m2 > 0.0)) throw DegenerateSeriesError("Jarque-Bera: residuals have zero variance");
    const double m3 = d.cube().mean();
    const double m4 = d.square().square().mean();
    const double S = m3 / std::pow(m2, 1.5);
    const double K = m4 / (m2 * m2);
    const double jb = static_cast<double>(n) * (S * S / 6.0 + (K - 3.0) * (K - 3.0) / 24.0);
    return chi2_entry("normality (Jarque-Bera)", jb, 2);
}

DiagnosticEntry ramsey_reset(const RegressionFit& fit, const Eigen::MatrixXd& X, const std::vector<int>& powers) {
    check_fit(fit, X);
    if (powers.empty()) throw ConfigError("RESET needs at least one power");
    for (int p : powers) {
        if (p < 2 || p > 4) throw ConfigError("RESET powers must lie in 2..4");
    }
    const auto n = X.rows();
    const int q = static_cast<int>(powers.size());
    const Eigen::VectorXd& yhat = fit.fitted;
    const double mean = yhat.mean();
    const double sd = std::sqrt((yhat.array() - mean).square().mean());
    if (!(sd > 1e-12 * std::max(1.0, std::abs(mean)))) {
        throw SingularDesignError("RESET: fitted values are constant, powers are collinear with the intercept",
                                  static_cast<int>(X.cols()));
    }
    std::string label;
    for (int p : powers) label += (label.empty() ? "" : ",") + std::to_string(p);
    const std::string name = "functional form (RESET, powers " + label + ")";

    const Eigen::VectorXd y = fit.fitted + fit.residuals;
    if (negligible(fit.residuals, fit.fitted)) return chi2_entry(name, 0.0, q);

    // Scaling y-hat before raising it keeps the augmented design well conditioned.
    const Eigen::ArrayXd z = yhat.array() / yhat.cwiseAbs().maxCoeff();
    Eigen::MatrixXd aug(n, X.cols() + q);
    aug.leftCols(X.cols()) = X;
    for (int i = 0; i < q; ++i) aug.col(X.cols() + i) = z.pow(powers[static_cast<std::size_t>(i)]).matrix();
    if (auto col = first_dependent_column(aug)) {
        throw SingularDesignError("RESET augmentation is collinear with the design", *col);
    }
    const auto a = ols_fit(y, aug);
    const double r2b = centred_r2(y, fit.residuals);
    const double r2a = centred_r2(y, a.residuals);
    const double stat = static_cast<double>(n) * (r2a - r2b) / (1.0 - r2a);
    return chi2_entry(name, stat, q);
}

Eigen::VectorXd recursive_residuals(const Eigen::VectorXd& y, const Eigen::MatrixXd& X) {
    const auto T = X.rows();
    const auto k = X.cols();
    if (y.size() != T) throw ConfigError("y and X have different lengths");
    if (T <= k + 1) throw InsufficientDataError("recursive residuals need T > k + 1");
    Eigen::VectorXd w(T - k);
    for (Eigen::Index t = k; t < T; ++t) {
        const Eigen::MatrixXd Xt = X.topRows(t);
        if (auto col = first_dependent_column(Xt)) {
            throw SingularDesignError("expanding-window design singular with " + std::to_string(t) +
                                          " observations at column " + std::to_string(*col),
                                      *col);
        }
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(Xt);
        const Eigen::VectorXd b = qr.solve(y.head(t));
        const Eigen::MatrixXd R = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
        const Eigen::VectorXd x = X.row(t).transpose();
        // x'(X'X)^{-1}x = |R^{-T} x|^2
        const Eigen::VectorXd z = R.transpose().triangularView<Eigen::Lower>().solve(x);
        w(t - k) = (y(t) - x.dot(b)) / std::sqrt(1.0 + z.squaredNorm());
    }
    return w;
}

int CusumPath::exits() const {
    int count = 0;
    for (std::size_t i = 0; i < statistic.size(); ++i) {
        if (statistic[i] < lower[i] || statistic[i] > upper[i]) ++count;
    }
    return count;
}

double cusum_bound(int t, int T, int k, Level level) {
    const double s = std::sqrt(static_cast<double>(T - k));
    return cusum_coefficient(level) * (s + 2.0 * static_cast<double>(t - k) / s);
}

CusumPath cusum(const Eigen::VectorXd& y, const Eigen::MatrixXd& X, Level level) {
    const Eigen::VectorXd w = recursive_residuals(y, X);
    const int T = static_cast<int>(X.rows());
    const int k = static_cast<int>(X.cols());
    const auto m = w.size();
    const bool exact = negligible(w, y);
    double sigma = 0.0;
    if (!exact && m > 1) sigma = std::sqrt((w.array() - w.mean()).square().sum() / static_cast<double>(m - 1));
    if (!exact && !(sigma > 0.0)) throw DegenerateSeriesError("CUSUM: recursive residuals have zero variance");

    CusumPath p;
    p.level = level;
    double acc = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
        const int t = k + 1 + static_cast<int>(i);
        if (!exact) acc += w(i) / sigma;
        const double b = cusum_bound(t, T, k, level);
        p.index.push_back(t);
        p.statistic.push_back(acc);
        p.lower.push_back(-b);
        p.upper.push_back(b);
    }
    return p;
}

CusumPath cusumsq(const Eigen::VectorXd& y, const Eigen::MatrixXd& X, Level level) {
    const Eigen::VectorXd w = recursive_residuals(y, X);
    const int T = static_cast<int>(X.rows());
    const int k = static_cast<int>(X.cols());
    const auto m = w.size();
    const bool exact = negligible(w, y);
    const double c0 = cusumsq_c0(T - k, level);

    std::vector<double> cum(static_cast<std::size_t>(m));
    double acc = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
        acc += w(i) * w(i);
        cum[static_cast<std::size_t>(i)] = acc;
    }
    const double total = acc;

    CusumPath p;
    p.level = level;
    for (Eigen::Index i = 0; i < m; ++i) {
        const int t = k + 1 + static_cast<int>(i);
        const double expected = static_cast<double>(t - k) / static_cast<double>(T - k);
        const double s = exact ? expected : cum[static_cast<std::size_t>(i)] / total;
        p.index.push_back(t);
        p.statistic.push_back(s);
        p.lower.push_back(expected - c0);
        p.upper.push_back(expected + c0);
    }
    return p;
}

DiagnosticsReport run_diagnostics(const Eigen::VectorXd& y, const Eigen::MatrixXd& X, const DiagnosticsOptions& opt) {
    const auto fit = ols_fit(y, X);
    DiagnosticsReport r;
    r.entries.push_back(breusch_godfrey(fit, X, opt.bg_order));
    r.entries.push_back(het_test(fit, X, opt.het));
    r.entries.push_back(jarque_bera(fit.residuals));
    r.entries.push_back(ramsey_reset(fit, X, opt.reset_powers));
    r.cusum = cusum(y, X, opt.level);
    r.cusumsq = cusumsq(y, X, opt.level);
    return r;
}

}  // namespace cointegra
