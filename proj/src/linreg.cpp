#include "cointegra/linreg.hpp"

#include <cmath>
#include <numbers>

#include "cointegra/errors.hpp"

namespace cointegra {

namespace {

constexpr double kRankTolerance = 1e-10;

Eigen::MatrixXd upper_inverse(const Eigen::MatrixXd& r) {
    const auto k = r.cols();
    return r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(k, k));
}

std::optional<int> dependent_column_from_qr(const Eigen::MatrixXd& X, const Eigen::MatrixXd& qr) {
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
        const double scale = X.col(j).norm();
        if (scale == 0.0 || std::abs(qr(j, j)) <= kRankTolerance * scale) {
            return static_cast<int>(j);
        }
    }
    return std::nullopt;
}

}  // namespace

std::string CovarianceKind::label() const {
    switch (type) {
        case Type::Classical: return "classical";
        case Type::WhiteHC0: return "white-hc0";
        case Type::NeweyWest: return "newey-west(" + std::to_string(bandwidth) + ")";
    }
    return "?";
}

Eigen::VectorXd RegressionFit::standard_errors() const {
    return covariance.diagonal().cwiseMax(0.0).cwiseSqrt();
}

Eigen::VectorXd RegressionFit::t_ratios() const {
    return coefficients.cwiseQuotient(standard_errors());
}

std::optional<int> first_dependent_column(const Eigen::MatrixXd& X) {
    if (X.cols() == 0) return std::nullopt;
    if (X.rows() < X.cols()) return static_cast<int>(X.rows());
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(X);
    return dependent_column_from_qr(X, qr.matrixQR());
}

Eigen::MatrixXd inverse_gram(const Eigen::MatrixXd& X) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(X);
    if (auto col = dependent_column_from_qr(X, qr.matrixQR())) {
        throw SingularDesignError("column " + std::to_string(*col) + " is collinear with earlier columns", *col);
    }
    const auto k = X.cols();
    Eigen::MatrixXd rinv = upper_inverse(qr.matrixQR().topLeftCorner(k, k));
    return rinv * rinv.transpose();
}

double centred_r2(const Eigen::VectorXd& y, const Eigen::VectorXd& residuals) {
    const double tss = (y.array() - y.mean()).square().sum();
    if (tss <= 0.0) return 0.0;
    return 1.0 - residuals.squaredNorm() / tss;
}

RegressionFit ols_fit(const Eigen::VectorXd& y, const Eigen::MatrixXd& X, CovarianceKind cov) {
    const auto n = X.rows();
    const auto k = X.cols();
    if (y.size() != n) {
        throw DataError("ols_fit: y has " + std::to_string(y.size()) + " rows, X has " + std::to_string(n));
    }
    if (n <= k) {
        throw InsufficientDataError("regression with " + std::to_string(n) + " observations and " +
                                    std::to_string(k) + " parameters");
    }
    if (cov.type == CovarianceKind::Type::NeweyWest && (cov.bandwidth < 0 || cov.bandwidth >= n)) {
        throw ConfigError("Newey-West bandwidth " + std::to_string(cov.bandwidth) + " outside [0, " +
                          std::to_string(n) + ")");
    }

    Eigen::HouseholderQR<Eigen::MatrixXd> qr(X);
    if (auto col = dependent_column_from_qr(X, qr.matrixQR())) {
        throw SingularDesignError("column " + std::to_string(*col) + " is collinear with earlier columns", *col);
    }

    RegressionFit fit;
    fit.n_obs = static_cast<int>(n);
    fit.n_params = static_cast<int>(k);
    fit.coefficients = qr.solve(y);
    fit.fitted = X * fit.coefficients;
    fit.residuals = y - fit.fitted;
    fit.rss = fit.residuals.squaredNorm();
    fit.tss = (y.array() - y.mean()).square().sum();
    fit.r2 = fit.tss > 0.0 ? 1.0 - fit.rss / fit.tss : 0.0;
    fit.sigma2 = fit.rss / static_cast<double>(n - k);
    const double nd = static_cast<double>(n);
    fit.loglik = -0.5 * nd * (1.0 + std::log(2.0 * std::numbers::pi) + std::log(fit.rss / nd));

    Eigen::MatrixXd rinv = upper_inverse(qr.matrixQR().topLeftCorner(k, k));
    Eigen::MatrixXd bread = rinv * rinv.transpose();
    fit.covariance_kind = cov;

    switch (cov.type) {
        case CovarianceKind::Type::Classical:
            fit.covariance = fit.sigma2 * bread;
            break;
        case CovarianceKind::Type::WhiteHC0:
        case CovarianceKind::Type::NeweyWest: {
            Eigen::MatrixXd scores = X.array().colwise() * fit.residuals.array();
            Eigen::MatrixXd meat = scores.transpose() * scores;
            const int bw = cov.type == CovarianceKind::Type::NeweyWest ? cov.bandwidth : 0;
            for (int j = 1; j <= bw; ++j) {
                const double w = 1.0 - static_cast<double>(j) / (bw + 1.0);
                Eigen::MatrixXd gamma = scores.bottomRows(n - j).transpose() * scores.topRows(n - j);
                meat += w * (gamma + gamma.transpose());
            }
            fit.covariance = bread * meat * bread;
            break;
        }
    }
    fit.covariance = 0.5 * (fit.covariance + fit.covariance.transpose());
    return fit;
}

double autocovariance(const Eigen::VectorXd& u, int lag) {
    const auto n = u.size();
    if (lag < 0 || lag >= n) return 0.0;
    return u.tail(n - lag).dot(u.head(n - lag)) / static_cast<double>(n);
}

double newey_west_longrun_variance(const Eigen::VectorXd& u, int bandwidth) {
    if (u.size() == 0) {
        throw InsufficientDataError("long-run variance of an empty vector");
    }
    if (bandwidth < 0 || bandwidth >= u.size()) {
        throw ConfigError("bandwidth " + std::to_string(bandwidth) + " must lie in [0, " +
                          std::to_string(u.size()) + ")");
    }
    double lrv = autocovariance(u, 0);
    for (int j = 1; j <= bandwidth; ++j) {
        lrv += 2.0 * (1.0 - static_cast<double>(j) / (bandwidth + 1.0)) * autocovariance(u, j);
    }
    return lrv;
}

int automatic_bandwidth(int n) {
    return static_cast<int>(std::floor(4.0 * std::pow(static_cast<double>(n) / 100.0, 2.0 / 9.0)));
}

std::string to_string(Criterion c) {
    switch (c) {
        case Criterion::AIC: return "aic";
        case Criterion::SC: return "sc";
        case Criterion::HQ: return "hq";
    }
    return "?";
}

Criterion criterion_from_string(const std::string& s) {
    if (s == "aic" || s == "AIC") return Criterion::AIC;
    if (s == "sc" || s == "SC" || s == "bic" || s == "BIC" || s == "sic") return Criterion::SC;
    if (s == "hq" || s == "HQ") return Criterion::HQ;
    throw ConfigError("unknown information criterion '" + s + "'");
}

InfoCriteria info_criteria(double loglik, int n_obs, int n_params) {
    const double n = n_obs;
    const double k = n_params;
    const double base = -2.0 * loglik / n;
    return InfoCriteria{
        .aic = base + 2.0 * k / n,
        .sc = base + k * std::log(n) / n,
        .hq = base + 2.0 * k * std::log(std::log(n)) / n,
    };
}

InfoCriteria info_criteria(const RegressionFit& fit) {
    return info_criteria(fit.loglik, fit.n_obs, fit.n_params);
}

double criterion_value(const InfoCriteria& ic, Criterion c) {
    switch (c) {
        case Criterion::AIC: return ic.aic;
        case Criterion::SC: return ic.sc;
        case Criterion::HQ: return ic.hq;
    }
    return ic.sc;
}

}  // namespace cointegra
