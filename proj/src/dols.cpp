#include "cointegra/dols.hpp"

#include <cmath>
#include <limits>

#include "cointegra/distributions.hpp"
#include "cointegra/errors.hpp"

namespace cointegra {

namespace {

void check_spec(const DolsSpec& spec) {
    if (spec.leads < 0 || spec.lags < 0) throw ConfigError("DOLS leads and lags must be non-negative");
}

bool augmented(int leads, int lags) { return leads > 0 || lags > 0; }

std::pair<int, int> default_sample(int T, int leads, int lags) {
    if (!augmented(leads, lags)) return {0, T - 1};
    return {lags + 1, T - 1 - leads};
}

Eigen::MatrixXd regressor_matrix(const Dataset& d, const std::vector<std::string>& regressors) {
    Eigen::MatrixXd x(static_cast<Eigen::Index>(d.num_obs()), static_cast<Eigen::Index>(regressors.size()));
    for (std::size_t j = 0; j < regressors.size(); ++j) {
        const auto v = d.at(regressors[j]).values();
        for (std::size_t i = 0; i < v.size(); ++i) x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v[i];
    }
    return x;
}

void check_roles(const Dataset& d, const std::string& dependent, const std::vector<std::string>& regressors) {
    if (regressors.empty()) throw ConfigError("DOLS needs at least one regressor");
    for (const auto& r : regressors) {
        if (r == dependent) throw ConfigError("dependent variable '" + dependent + "' listed among regressors");
        (void)d.at(r);
    }
    (void)d.at(dependent);
}

}  // namespace

DolsDesign dols_design(std::span<const double> y, const Eigen::MatrixXd& x, const std::vector<std::string>& x_names,
                       int leads, int lags, int first, int last) {
    const int T = static_cast<int>(y.size());
    const int m = static_cast<int>(x.cols());
    const bool aug = augmented(leads, lags);
    if (first < 0 || last >= T || first > last || (aug && (first - lags < 1 || last + leads > T - 1))) {
        throw InsufficientDataError("DOLS sample [" + std::to_string(first) + ", " + std::to_string(last) +
                                    "] incompatible with " + std::to_string(leads) + " leads and " +
                                    std::to_string(lags) + " lags over " + std::to_string(T) + " observations");
    }
    const int n = last - first + 1;
    const int width = aug ? (leads + lags + 1) : 0;
    DolsDesign out;
    out.y.resize(n);
    out.X.resize(n, 1 + m + m * width);
    out.names.push_back("C");
    for (const auto& nm : x_names) out.names.push_back(nm);
    if (aug) {
        for (int j = -lags; j <= leads; ++j) {
            for (const auto& nm : x_names) {
                if (j == 0) out.names.push_back("D(" + nm + ")");
                else out.names.push_back("D(" + nm + (j > 0 ? ",+" : ",") + std::to_string(j) + ")");
            }
        }
    }
    for (int r = 0; r < n; ++r) {
        const int t = first + r;
        out.y(r) = y[t];
        out.X(r, 0) = 1.0;
        out.X.row(r).segment(1, m) = x.row(t);
        int c = 1 + m;
        if (aug) {
            for (int j = -lags; j <= leads; ++j) {
                out.X.row(r).segment(c, m) = x.row(t + j) - x.row(t + j - 1);
                c += m;
            }
        }
    }
    return out;
}

DolsFit dols_fit(std::span<const double> y, const Eigen::MatrixXd& x, const std::vector<std::string>& x_names,
                 DolsSpec spec, int start_year) {
    check_spec(spec);
    const int T = static_cast<int>(y.size());
    const int m = static_cast<int>(x.cols());
    const auto [first, last] = default_sample(T, spec.leads, spec.lags);
    const int n = last - first + 1;
    const int k = 1 + m + (augmented(spec.leads, spec.lags) ? m * (spec.leads + spec.lags + 1) : 0);
    if (n <= k) {
        throw InsufficientDataError("DOLS(" + std::to_string(spec.leads) + "," + std::to_string(spec.lags) + ") has " +
                                    std::to_string(n) + " observations for " + std::to_string(k) + " parameters");
    }
    const auto design = dols_design(y, x, x_names, spec.leads, spec.lags, first, last);

    DolsFit out;
    out.spec = spec;
    out.first_year = start_year + first;
    out.y = design.y;
    out.design = design.X;
    out.regression = ols_fit(design.y, design.X);
    out.residuals = out.regression.residuals;
    out.n_obs = n;
    out.bandwidth = spec.hac.automatic ? automatic_bandwidth(n) : spec.hac.bandwidth;
    if (out.bandwidth < 0 || out.bandwidth >= n) {
        throw ConfigError("HAC bandwidth " + std::to_string(out.bandwidth) + " outside [0, " + std::to_string(n) + ")");
    }
    out.longrun_variance = newey_west_longrun_variance(out.residuals, out.bandwidth);
    const Eigen::MatrixXd cov = out.longrun_variance * inverse_gram(design.X) *
                                (static_cast<double>(n) / static_cast<double>(n - k));

    // Long-run block: regressors in order, intercept last.
    out.longrun_names.assign(x_names.begin(), x_names.end());
    out.longrun_names.push_back("C");
    out.longrun_coefficients.resize(m + 1);
    out.hac_standard_errors.resize(m + 1);
    for (int j = 0; j <= m; ++j) {
        const int col = j < m ? j + 1 : 0;
        out.longrun_coefficients(j) = out.regression.coefficients(col);
        out.hac_standard_errors(j) = std::sqrt(std::max(cov(col, col), 0.0));
    }
    out.t_ratios = out.longrun_coefficients.cwiseQuotient(out.hac_standard_errors);
    out.p_values.resize(m + 1);
    for (int j = 0; j <= m; ++j) out.p_values(j) = student_t_two_sided(out.t_ratios(j), n - k);

    const int nn = k - 1 - m;
    out.nuisance_names.assign(design.names.begin() + 1 + m, design.names.end());
    out.nuisance_coefficients = out.regression.coefficients.tail(nn);
    return out;
}

DolsFit dols_fit(const Dataset& d, const std::string& dependent, const std::vector<std::string>& regressors,
                 DolsSpec spec) {
    check_roles(d, dependent, regressors);
    return dols_fit(d.at(dependent).values(), regressor_matrix(d, regressors), regressors, spec, d.start_year());
}

DolsSpec select_leads_lags(std::span<const double> y, const Eigen::MatrixXd& x, int max_order) {
    if (max_order < 0) throw ConfigError("max_order must be non-negative");
    const int T = static_cast<int>(y.size());
    const int m = static_cast<int>(x.cols());
    // Shrink the largest order until it keeps at least one residual degree of freedom.
    auto dof = [&](int q) { return (q > 0 ? T - 2 * q - 1 : T) - (1 + m + (q > 0 ? m * (2 * q + 1) : 0)); };
    while (max_order > 0 && dof(max_order) < 1) --max_order;
    if (dof(max_order) < 1) throw InsufficientDataError("too few observations for the static regression");
    const int first = max_order > 0 ? max_order + 1 : 0;
    const int last = T - 1 - max_order;
    std::vector<std::string> names(static_cast<std::size_t>(x.cols()), "x");
    int best = 0;
    double best_sc = std::numeric_limits<double>::infinity();
    for (int q = 0; q <= max_order; ++q) {
        const auto design = dols_design(y, x, names, q, q, first, last);
        if (design.X.rows() <= design.X.cols()) {
            throw InsufficientDataError("DOLS order " + std::to_string(q) + " leaves no residual degrees of freedom");
        }
        const auto fit = ols_fit(design.y, design.X);
        const double sc = info_criteria(fit).sc;
        if (sc < best_sc) {
            best_sc = sc;
            best = q;
        }
    }
    DolsSpec spec;
    spec.leads = best;
    spec.lags = best;
    return spec;
}

DolsSpec select_leads_lags(const Dataset& d, const std::string& dependent, const std::vector<std::string>& regressors,
                           int max_order) {
    check_roles(d, dependent, regressors);
    return select_leads_lags(d.at(dependent).values(), regressor_matrix(d, regressors), max_order);
}

}  // namespace cointegra
