#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cointegra/common.hpp"
#include "cointegra/critical_values.hpp"

namespace cointegra {

/// Statistic whose null distribution is simulated.
struct McTarget {
    enum class Kind { DickeyFuller, ZivotAndrews, JohansenTrace, JohansenMaxEig };
    Kind kind = Kind::DickeyFuller;
    Deterministic df_spec = Deterministic::Constant;
    ZaModel za_model = ZaModel::A;
    double trimming = 0.15;
    int trends = 1;  ///< Johansen: number of variables, all random walks (n - r under the null)
    JohansenCase det_case = JohansenCase::UnrestrictedConstant;

    static McTarget df(Deterministic spec);
    static McTarget za(ZaModel model, double trimming = 0.15);
    static McTarget johansen_trace(int trends, JohansenCase c = JohansenCase::UnrestrictedConstant);
    static McTarget johansen_maxeig(int trends, JohansenCase c = JohansenCase::UnrestrictedConstant);

    [[nodiscard]] bool upper_tail() const noexcept {
        return kind == Kind::JohansenTrace || kind == Kind::JohansenMaxEig;
    }
    /// e.g. "df:c", "za:C:0.15", "trace:2:3", "maxeig:5:3".
    [[nodiscard]] std::string label() const;
    static McTarget parse(const std::string& s);
};

struct McConfig {
    int T = 500;
    int reps = 5000;
    std::uint64_t seed = 20240917;
    McTarget target;
    int workers = 0;  ///< 0 = hardware concurrency; never changes the result
};

struct QuantileRow {
    Level level = Level::P5;
    double probability = 0.0;  ///< cumulative probability of the quantile
    double quantile = 0.0;
    double mc_se = 0.0;        ///< order-statistic standard error
};

struct QuantileTable {
    McTarget target;
    int T = 0;
    int reps = 0;
    std::uint64_t seed = 0;
    std::vector<QuantileRow> rows;  ///< 1%, 5%, 10%

    [[nodiscard]] const QuantileRow& at(Level level) const;
};

/// Seed of replication `rep`'s private generator.
std::uint64_t replication_seed(std::uint64_t seed, std::uint64_t rep);

/// One draw of the statistic under its random-walk null.
double simulate_statistic(const McTarget& target, int T, std::uint64_t stream_seed);

/// All R draws, in replication order.
std::vector<double> simulate_draws(const McConfig& cfg);

/// Type-7 empirical quantile of sorted data.
double empirical_quantile(const std::vector<double>& sorted, double p);
/// Half the distance between the order statistics one binomial sd either side of p R.
double quantile_standard_error(const std::vector<double>& sorted, double p);

QuantileTable quantile_table(const McConfig& cfg, std::vector<double> draws);
QuantileTable simulate_quantiles(const McConfig& cfg);

struct ValidationEntry {
    std::string table;  ///< "df", "za", "johansen-trace", "johansen-maxeig"
    std::string key;    ///< deterministic spec, model or n - r
    Level level = Level::P5;
    double embedded = 0.0;
    double simulated = 0.0;
    double mc_se = 0.0;
    double allowance = 0.0;
    bool passed = false;
};

struct ValidationReport {
    int T = 0;
    int reps = 0;
    std::uint64_t seed = 0;
    std::vector<ValidationEntry> entries;
    [[nodiscard]] bool all_passed() const;
    [[nodiscard]] int failures() const;
};

struct ValidationBudget {
    int T = 500;
    int reps = 5000;
    std::uint64_t seed = 20240917;
    int workers = 0;
    int max_trends = 12;  ///< Johansen rows checked: n - r = 1..max_trends
};

/**
 * Compares every embedded constant with its simulated quantile.
 *
 * An entry passes iff |embedded - simulated| < 3 se + allowance, the allowance
 * being 0.1 for Dickey-Fuller and Zivot-Andrews and 1.0 for Johansen.
 */
ValidationReport validate_tables(const ValidationBudget& budget = {},
                                 const CriticalValueTables& tables = embedded_tables());

}  // namespace cointegra
