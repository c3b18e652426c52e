#pragma once

#include <map>
#include <span>
#include <utility>

#include "cointegra/common.hpp"
#include "cointegra/critical_values.hpp"
#include "cointegra/series.hpp"
#include "cointegra/unitroot.hpp"

namespace cointegra {

struct ZaResult {
    double min_statistic = 0.0;
    int break_year = 0;  ///< first year with the post-break dummy switched on
    int lags = 0;        ///< augmentation order at the minimising candidate
    std::map<int, double> per_candidate;  ///< break year -> tau
    ZaModel model = ZaModel::A;
    double trimming = 0.15;
    std::map<Level, double> critical_values;

    [[nodiscard]] bool rejects(Level level) const;
    [[nodiscard]] int stars() const;
};

/// Inclusive range of break indices b (0-based index of the first post-break
/// observation) searched for a series of length T: [ceil(trim T), floor((1 - trim) T)].
std::pair<int, int> za_break_range(int T, double trimming);

/**
 * Zivot-Andrews test with one endogenous break.
 *
 * For each candidate break b the regression
 *   dy_t = c + beta t + theta DU_t + phi DT_t + gamma y_{t-1} + sum_i delta_i dy_{t-i} + e_t
 * is fitted, with DU_t = 1{t >= b} (models A, C) and DT_t = (t - b + 1) 1{t >= b}
 * (models B, C). The statistic is the infimum of the gamma t-ratios; ties go to
 * the earliest year. Candidates with fewer than two pre-break rows in the
 * regression sample are skipped.
 */
ZaResult za_test(const TimeSeries& s, ZaModel model, double trimming = 0.15,
                 LagPolicy lag_policy = LagPolicy::select());
ZaResult za_test(std::span<const double> y, int start_year, ZaModel model, double trimming = 0.15,
                 LagPolicy lag_policy = LagPolicy::select());

/// Infimum statistic without lag augmentation, computed from running moment
/// sums rather than per-candidate regressions. Used by the simulator.
double za_statistic_no_lags(std::span<const double> y, ZaModel model, double trimming);

}  // namespace cointegra
