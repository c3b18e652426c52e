#include "cointegra/johansen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cointegra/errors.hpp"
#include "cointegra/linreg.hpp"
#include "cointegra/varselect.hpp"

namespace cointegra {

namespace {

Eigen::MatrixXd residualise(const Eigen::MatrixXd& target, const Eigen::MatrixXd& Z) {
    if (Z.cols() == 0) return target;
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(Z);
    return target - Z * qr.solve(target);
}

std::string column_name(const std::vector<std::string>& names, int col, int k, JohansenCase c) {
    if (col < k) return "'" + names[static_cast<std::size_t>(col)] + "'";
    return c == JohansenCase::RestrictedConstant ? "the restricted constant" : "the restricted trend";
}

}  // namespace

EigenSolution johansen_eigen(const Eigen::MatrixXd& levels, VecmSpec spec, std::vector<std::string> names) {
    const int T = static_cast<int>(levels.rows());
    const int k = static_cast<int>(levels.cols());
    const int L = spec.diff_lags;
    if (k < 1) throw ConfigError("Johansen analysis needs at least one variable");
    if (L < 0) throw ConfigError("diff_lags must be non-negative");
    if (names.empty()) {
        for (int j = 0; j < k; ++j) names.push_back("y" + std::to_string(j + 1));
    }

    const bool restricted = spec.det_case == JohansenCase::RestrictedConstant ||
                            spec.det_case == JohansenCase::RestrictedTrend;
    const bool unrestricted_constant = spec.det_case == JohansenCase::UnrestrictedConstant ||
                                       spec.det_case == JohansenCase::RestrictedTrend;
    const int first = L + 1;
    const int n = T - first;
    const int nz = k * L + (unrestricted_constant ? 1 : 0);
    const int k1 = k + (restricted ? 1 : 0);
    if (n <= nz + k1) {
        throw InsufficientDataError("Johansen auxiliary regressions need more than " + std::to_string(nz + k1) +
                                    " observations, have " + std::to_string(n));
    }

    Eigen::MatrixXd dY(n, k), Y1(n, k1), Z(n, nz);
    for (int r = 0; r < n; ++r) {
        const int t = first + r;
        dY.row(r) = levels.row(t) - levels.row(t - 1);
        Y1.row(r).head(k) = levels.row(t - 1);
        if (spec.det_case == JohansenCase::RestrictedConstant) Y1(r, k) = 1.0;
        if (spec.det_case == JohansenCase::RestrictedTrend) Y1(r, k) = static_cast<double>(t);
        int c = 0;
        for (int i = 1; i <= L; ++i) {
            Z.row(r).segment(c, k) = levels.row(t - i) - levels.row(t - i - 1);
            c += k;
        }
        if (unrestricted_constant) Z(r, c++) = 1.0;
    }

    const Eigen::MatrixXd R0 = residualise(dY, Z);
    const Eigen::MatrixXd R1 = residualise(Y1, Z);
    if (auto col = first_dependent_column(R0)) {
        throw SingularDesignError("S00 is singular: differenced " + column_name(names, *col, k, spec.det_case) +
                                  " is collinear with the other variables", *col);
    }
    if (auto col = first_dependent_column(R1)) {
        throw SingularDesignError("S11 is singular: lagged level of " + column_name(names, *col, k, spec.det_case) +
                                  " is collinear with the other variables", *col);
    }

    EigenSolution out;
    out.spec = spec;
    out.names = std::move(names);
    out.n_obs = n;
    out.s00 = R0.transpose() * R0 / static_cast<double>(n);
    out.s11 = R1.transpose() * R1 / static_cast<double>(n);
    out.s01 = R0.transpose() * R1 / static_cast<double>(n);

    Eigen::LLT<Eigen::MatrixXd> llt11(out.s11);
    if (llt11.info() != Eigen::Success) throw NumericalError("S11 is not positive definite");
    const Eigen::MatrixXd Lf = llt11.matrixL();
    // C = L^{-1} M L^{-T} with M = S10 S00^{-1} S01
    const Eigen::MatrixXd M = out.s01.transpose() * out.s00.llt().solve(out.s01);
    const auto lower = Lf.triangularView<Eigen::Lower>();
    const Eigen::MatrixXd A = lower.solve(M);
    Eigen::MatrixXd C = lower.solve(A.transpose()).transpose();
    C = 0.5 * (C + C.transpose());

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(C);
    const Eigen::VectorXd vals = es.eigenvalues();  // ascending
    const Eigen::MatrixXd vecs = es.eigenvectors();
    out.eigenvalues.resize(k);
    out.eigenvectors.resize(k1, k);
    for (int i = 0; i < k; ++i) {
        const int src = k1 - 1 - i;
        double lambda = vals(src);
        if (lambda < 0.0 && lambda > -1e-10) lambda = 0.0;
        if (lambda < 0.0 || lambda >= 1.0) {
            throw NumericalError("Johansen eigenvalue " + std::to_string(lambda) + " outside [0, 1)");
        }
        out.eigenvalues(i) = lambda;
        out.eigenvectors.col(i) = Lf.transpose().triangularView<Eigen::Upper>().solve(vecs.col(src));
    }
    return out;
}

EigenSolution johansen_eigen(const Dataset& d, VecmSpec spec) {
    return johansen_eigen(to_matrix(d), spec, d.names());
}

JohansenStatistics johansen_statistics(const Eigen::VectorXd& eigenvalues, int T) {
    const auto k = eigenvalues.size();
    JohansenStatistics s;
    s.trace.setZero(k);
    s.maxeig.setZero(k);
    double acc = 0.0;
    for (Eigen::Index i = k - 1; i >= 0; --i) {
        const double lambda = eigenvalues(i);
        if (!(lambda >= 0.0 && lambda < 1.0)) {
            throw NumericalError("eigenvalue " + std::to_string(lambda) + " outside [0, 1)");
        }
        const double term = -static_cast<double>(T) * std::log1p(-lambda);
        acc += term;
        s.maxeig(i) = term;
        s.trace(i) = acc;
    }
    return s;
}

RankTestResult rank_test(const EigenSolution& e, int T, Level level,
                         const std::vector<JohansenCriticalValues>& critical_values) {
    const int k = e.num_variables();
    if (static_cast<int>(critical_values.size()) < k) {
        throw ConfigError("need critical values for r = 0.." + std::to_string(k - 1));
    }
    if (T <= 0) T = e.n_obs;
    const auto stats = johansen_statistics(e.eigenvalues, T);
    const bool tabulated = e.spec.det_case == JohansenCase::UnrestrictedConstant && k <= 12;

    RankTestResult out;
    out.level = level;
    out.n_obs = T;
    out.decided_rank = k;
    out.maxeig_decided_rank = k;
    for (int r = 0; r < k; ++r) {
        RankRow row;
        row.r = r;
        row.eigenvalue = e.eigenvalues(r);
        row.trace = stats.trace(r);
        row.maxeig = stats.maxeig(r);
        row.trace_cv = critical_values[static_cast<std::size_t>(r)].trace;
        row.maxeig_cv = critical_values[static_cast<std::size_t>(r)].maxeig;
        row.trace_rejects = row.trace > row.trace_cv;
        row.maxeig_rejects = row.maxeig > row.maxeig_cv;
        if (tabulated) {
            for (Level l : kAllLevels) {
                const auto cv = johansen_critical_values(k - r, e.spec.det_case, l);
                row.trace_stars += row.trace > cv.trace ? 1 : 0;
                row.maxeig_stars += row.maxeig > cv.maxeig ? 1 : 0;
            }
        }
        if (!row.trace_rejects && out.decided_rank == k) out.decided_rank = r;
        if (!row.maxeig_rejects && out.maxeig_decided_rank == k) out.maxeig_decided_rank = r;
        out.rows.push_back(row);
    }
    return out;
}

RankTestResult rank_test(const EigenSolution& e, int T, Level level) {
    const int k = e.num_variables();
    std::vector<JohansenCriticalValues> cvs;
    for (int r = 0; r < k; ++r) cvs.push_back(johansen_critical_values(k - r, e.spec.det_case, level));
    return rank_test(e, T, level, cvs);
}

}  // namespace cointegra
