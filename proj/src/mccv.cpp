#include "cointegra/mccv.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "cointegra/errors.hpp"
#include "cointegra/johansen.hpp"
#include "cointegra/unitroot.hpp"
#include "cointegra/zabreak.hpp"

namespace cointegra {

namespace {

constexpr int kZaBurnIn = 50;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::vector<double> random_walk(std::mt19937_64& gen, int n) {
    std::normal_distribution<double> normal;
    std::vector<double> y(static_cast<std::size_t>(n));
    y[0] = 0.0;
    for (int t = 1; t < n; ++t) y[static_cast<std::size_t>(t)] = y[static_cast<std::size_t>(t) - 1] + normal(gen);
    return y;
}

JohansenStatistics johansen_draw(int trends, JohansenCase c, int T, std::uint64_t stream_seed) {
    std::mt19937_64 gen(stream_seed);
    std::normal_distribution<double> normal;
    Eigen::MatrixXd levels(T, trends);
    // The unrestricted-constant limit assumes trending data: one walk carries a unit drift.
    const double drift = c == JohansenCase::UnrestrictedConstant ? 1.0 : 0.0;
    levels.row(0).setZero();
    for (int t = 1; t < T; ++t) {
        for (int j = 0; j < trends; ++j) levels(t, j) = levels(t - 1, j) + normal(gen);
        levels(t, trends - 1) += drift;
    }
    VecmSpec spec;
    spec.diff_lags = 0;
    spec.det_case = c;
    const auto e = johansen_eigen(levels, spec);
    return johansen_statistics(e.eigenvalues, e.n_obs);
}

template <class R, class F>
std::vector<R> parallel_map(int reps, int workers, F&& f) {
    std::vector<R> out(static_cast<std::size_t>(reps));
    if (workers <= 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    workers = std::min(workers, reps);
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto body = [&] {
        for (int i = next++; i < reps; i = next++) {
            try {
                out[static_cast<std::size_t>(i)] = f(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = reps;
            }
        }
    };
    if (workers <= 1) {
        body();
    } else {
        std::vector<std::jthread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(body);
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

void check_config(const McConfig& cfg) {
    if (cfg.reps < 1) throw ConfigError("replications must be positive");
    if (cfg.T < 10) throw ConfigError("simulated sample size must be at least 10");
    if (cfg.target.trends < 1) throw ConfigError("Johansen target needs at least one trend");
}

std::string format_trim(double t) {
    std::ostringstream os;
    os << t;
    return os.str();
}

}  // namespace

McTarget McTarget::df(Deterministic spec) {
    McTarget t;
    t.kind = Kind::DickeyFuller;
    t.df_spec = spec;
    return t;
}

McTarget McTarget::za(ZaModel model, double trimming) {
    McTarget t;
    t.kind = Kind::ZivotAndrews;
    t.za_model = model;
    t.trimming = trimming;
    return t;
}

McTarget McTarget::johansen_trace(int trends, JohansenCase c) {
    McTarget t;
    t.kind = Kind::JohansenTrace;
    t.trends = trends;
    t.det_case = c;
    return t;
}

McTarget McTarget::johansen_maxeig(int trends, JohansenCase c) {
    auto t = johansen_trace(trends, c);
    t.kind = Kind::JohansenMaxEig;
    return t;
}

std::string McTarget::label() const {
    switch (kind) {
        case Kind::DickeyFuller: return "df:" + to_string(df_spec);
        case Kind::ZivotAndrews: return "za:" + to_string(za_model) + ":" + format_trim(trimming);
        case Kind::JohansenTrace:
            return "trace:" + std::to_string(trends) + ":" + std::to_string(static_cast<int>(det_case));
        case Kind::JohansenMaxEig:
            return "maxeig:" + std::to_string(trends) + ":" + std::to_string(static_cast<int>(det_case));
    }
    return {};
}

McTarget McTarget::parse(const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.empty()) throw ConfigError("empty Monte Carlo target");
    const auto& head = parts[0];
    try {
        if (head == "df" && parts.size() == 2) return df(deterministic_from_string(parts[1]));
        if (head == "za" && (parts.size() == 2 || parts.size() == 3)) {
            const double trim = parts.size() == 3 ? std::stod(parts[2]) : 0.15;
            if (!(trim > 0.0 && trim < 0.5)) throw ConfigError("trimming must lie in (0, 0.5)");
            return za(za_model_from_string(parts[1]), trim);
        }
        if ((head == "trace" || head == "maxeig") && (parts.size() == 2 || parts.size() == 3)) {
            const int k = std::stoi(parts[1]);
            const auto c = parts.size() == 3 ? johansen_case_from_int(std::stoi(parts[2]))
                                             : JohansenCase::UnrestrictedConstant;
            if (k < 1) throw ConfigError("Johansen target needs at least one trend");
            return head == "trace" ? johansen_trace(k, c) : johansen_maxeig(k, c);
        }
    } catch (const std::invalid_argument&) {
    } catch (const std::out_of_range&) {
    }
    throw ConfigError("unrecognised Monte Carlo target '" + s +
                      "' (expected df:<c|ct|nc>, za:<A|B|C>[:trim], trace:<k>[:case] or maxeig:<k>[:case])");
}

const QuantileRow& QuantileTable::at(Level level) const {
    for (const auto& r : rows) {
        if (r.level == level) return r;
    }
    throw ConfigError("level " + to_string(level) + " not in quantile table");
}

std::uint64_t replication_seed(std::uint64_t seed, std::uint64_t rep) {
    return splitmix64(splitmix64(seed) ^ splitmix64(rep + 0x632be59bd9b4e019ULL));
}

double simulate_statistic(const McTarget& target, int T, std::uint64_t stream_seed) {
    switch (target.kind) {
        case McTarget::Kind::DickeyFuller: {
            std::mt19937_64 gen(stream_seed);
            const auto y = random_walk(gen, T);
            return df_tau(build_df_regression(y, target.df_spec, 0, 1));
        }
        case McTarget::Kind::ZivotAndrews: {
            std::mt19937_64 gen(stream_seed);
            const auto y = random_walk(gen, T + kZaBurnIn);
            return za_statistic_no_lags(std::span<const double>(y).subspan(kZaBurnIn), target.za_model,
                                        target.trimming);
        }
        case McTarget::Kind::JohansenTrace:
            return johansen_draw(target.trends, target.det_case, T, stream_seed).trace(0);
        case McTarget::Kind::JohansenMaxEig:
            return johansen_draw(target.trends, target.det_case, T, stream_seed).maxeig(0);
    }
    return 0.0;
}

std::vector<double> simulate_draws(const McConfig& cfg) {
    check_config(cfg);
    return parallel_map<double>(cfg.reps, cfg.workers, [&](int i) {
        return simulate_statistic(cfg.target, cfg.T, replication_seed(cfg.seed, static_cast<std::uint64_t>(i)));
    });
}

double empirical_quantile(const std::vector<double>& sorted, double p) {
    if (sorted.empty()) throw ConfigError("quantile of an empty sample");
    p = std::clamp(p, 0.0, 1.0);
    const double h = static_cast<double>(sorted.size() - 1) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

double quantile_standard_error(const std::vector<double>& sorted, double p) {
    const double R = static_cast<double>(sorted.size());
    const double d = std::sqrt(p * (1.0 - p) / R);
    return 0.5 * (empirical_quantile(sorted, p + d) - empirical_quantile(sorted, p - d));
}

QuantileTable quantile_table(const McConfig& cfg, std::vector<double> draws) {
    std::sort(draws.begin(), draws.end());
    QuantileTable t;
    t.target = cfg.target;
    t.T = cfg.T;
    t.reps = static_cast<int>(draws.size());
    t.seed = cfg.seed;
    for (Level l : kAllLevels) {
        QuantileRow row;
        row.level = l;
        row.probability = cfg.target.upper_tail() ? 1.0 - level_fraction(l) : level_fraction(l);
        row.quantile = empirical_quantile(draws, row.probability);
        row.mc_se = quantile_standard_error(draws, row.probability);
        t.rows.push_back(row);
    }
    return t;
}

QuantileTable simulate_quantiles(const McConfig& cfg) { return quantile_table(cfg, simulate_draws(cfg)); }

bool ValidationReport::all_passed() const { return failures() == 0; }

int ValidationReport::failures() const {
    return static_cast<int>(std::count_if(entries.begin(), entries.end(), [](const auto& e) { return !e.passed; }));
}

ValidationReport validate_tables(const ValidationBudget& budget, const CriticalValueTables& tables) {
    ValidationReport report;
    report.T = budget.T;
    report.reps = budget.reps;
    report.seed = budget.seed;

    auto add = [&](std::string table, std::string key, const QuantileTable& q, double allowance, auto embedded_of) {
        for (const auto& row : q.rows) {
            ValidationEntry e;
            e.table = table;
            e.key = key;
            e.level = row.level;
            e.embedded = embedded_of(row.level);
            e.simulated = row.quantile;
            e.mc_se = row.mc_se;
            e.allowance = allowance;
            e.passed = std::abs(e.embedded - e.simulated) < 3.0 * e.mc_se + allowance;
            report.entries.push_back(e);
        }
    };

    McConfig cfg;
    cfg.T = budget.T;
    cfg.reps = budget.reps;
    cfg.seed = budget.seed;
    cfg.workers = budget.workers;

    for (Deterministic spec : {Deterministic::None, Deterministic::Constant, Deterministic::ConstantTrend}) {
        cfg.target = McTarget::df(spec);
        const auto q = simulate_quantiles(cfg);
        add("df", to_string(spec), q, 0.1,
            [&](Level l) { return df_critical_value(spec, budget.T - 1, l, tables); });
    }
    for (ZaModel m : {ZaModel::A, ZaModel::B, ZaModel::C}) {
        cfg.target = McTarget::za(m, 0.15);
        const auto q = simulate_quantiles(cfg);
        add("za", to_string(m), q, 0.1, [&](Level l) { return za_critical_value(m, l, tables); });
    }
    for (int k = 1; k <= std::min(budget.max_trends, 12); ++k) {
        // One set of draws feeds both statistics.
        const auto pairs = parallel_map<JohansenStatistics>(budget.reps, budget.workers, [&](int i) {
            return johansen_draw(k, JohansenCase::UnrestrictedConstant, budget.T,
                                 replication_seed(budget.seed, static_cast<std::uint64_t>(i)));
        });
        std::vector<double> trace, maxeig;
        for (const auto& p : pairs) {
            trace.push_back(p.trace(0));
            maxeig.push_back(p.maxeig(0));
        }
        cfg.target = McTarget::johansen_trace(k);
        add("johansen-trace", "n-r=" + std::to_string(k), quantile_table(cfg, trace), 1.0, [&](Level l) {
            return johansen_critical_values(k, JohansenCase::UnrestrictedConstant, l, tables).trace;
        });
        cfg.target = McTarget::johansen_maxeig(k);
        add("johansen-maxeig", "n-r=" + std::to_string(k), quantile_table(cfg, maxeig), 1.0, [&](Level l) {
            return johansen_critical_values(k, JohansenCase::UnrestrictedConstant, l, tables).maxeig;
        });
    }
    return report;
}

}  // namespace cointegra
