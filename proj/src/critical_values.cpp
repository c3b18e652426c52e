#include "cointegra/critical_values.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>

#include "cointegra/errors.hpp"

namespace cointegra {

namespace {

std::size_t level_index(Level level) {
    switch (level) {
        case Level::P1: return 0;
        case Level::P5: return 1;
        case Level::P10: return 2;
    }
    throw ConfigError("unsupported significance level");
}

CriticalValueTables make_embedded() {
    CriticalValueTables t;
    // MacKinnon (2010), single-series tau, {b0, b1, b2, b3}.
    t.dickey_fuller[static_cast<int>(Deterministic::None)] = {{
        {-2.56574, -2.2358, -3.627, 0.0},
        {-1.94100, -0.2686, -3.365, 31.223},
        {-1.61682, 0.2656, -2.714, 25.364},
    }};
    t.dickey_fuller[static_cast<int>(Deterministic::Constant)] = {{
        {-3.43035, -6.5393, -16.786, -79.433},
        {-2.86154, -2.8903, -4.234, -40.040},
        {-2.56677, -1.5384, -2.809, 0.0},
    }};
    t.dickey_fuller[static_cast<int>(Deterministic::ConstantTrend)] = {{
        {-3.95877, -9.0531, -28.428, -134.155},
        {-3.41049, -4.3904, -9.036, -45.374},
        {-3.12705, -2.5856, -3.925, -22.380},
    }};

    // Zivot-Andrews, {1%, 5%, 10%}. Model A carries the values used for the
    // Turkish export study tables; B and C are the published ones.
    t.zivot_andrews[static_cast<int>(ZaModel::A)] = {-5.34, -4.93, -4.58};
    t.zivot_andrews[static_cast<int>(ZaModel::B)] = {-4.93, -4.42, -4.11};
    t.zivot_andrews[static_cast<int>(ZaModel::C)] = {-5.57, -5.08, -4.82};

    // Johansen case 3, {1%, 5%, 10%} by n - r = 1..12.
    t.johansen_trace = {{
        {6.635, 3.841, 2.706},
        {19.937, 15.495, 13.429},
        {35.458, 29.797, 27.067},
        {54.682, 47.856, 44.494},
        {77.819, 69.819, 65.820},
        {104.962, 95.754, 91.110},
        {135.973, 125.615, 120.367},
        {171.091, 159.530, 153.634},
        {210.037, 197.371, 190.871},
        {253.253, 239.235, 232.103},
        {300.282, 285.143, 277.374},
        {351.215, 334.984, 326.535},
    }};
    t.johansen_maxeig = {{
        {6.635, 3.841, 2.706},
        {18.520, 14.265, 12.297},
        {25.861, 21.132, 18.893},
        {32.715, 27.584, 25.124},
        {39.370, 33.877, 31.239},
        {45.869, 40.078, 37.278},
        {52.308, 46.231, 43.295},
        {58.663, 52.363, 49.286},
        {64.996, 58.434, 55.246},
        {71.252, 64.505, 61.208},
        {77.489, 70.535, 67.131},
        {83.711, 76.578, 73.056},
    }};
    return t;
}

struct Cusumsq {
    int m;
    std::array<double, 3> c0;
};

constexpr Cusumsq kCusumsqTable[] = {
#include "cusumsq_table.inc"
};

}  // namespace

const CriticalValueTables& embedded_tables() {
    static const CriticalValueTables tables = make_embedded();
    return tables;
}

double df_critical_value(Deterministic spec, int n, Level level, const CriticalValueTables& tables) {
    const auto& b = tables.dickey_fuller[static_cast<int>(spec)][level_index(level)];
    if (n <= 0) return b[0];
    const double inv = 1.0 / static_cast<double>(n);
    return b[0] + inv * (b[1] + inv * (b[2] + inv * b[3]));
}

double za_critical_value(ZaModel model, Level level, const CriticalValueTables& tables) {
    return tables.zivot_andrews[static_cast<int>(model)][level_index(level)];
}

JohansenCriticalValues johansen_critical_values(int n_minus_r, JohansenCase det_case, Level level,
                                                const CriticalValueTables& tables) {
    if (n_minus_r < 1 || n_minus_r > 12) {
        throw ConfigError("Johansen critical values tabulated for n - r in 1..12, got " + std::to_string(n_minus_r));
    }
    if (det_case != JohansenCase::UnrestrictedConstant) {
        throw ConfigError("Johansen critical values are embedded for case 3 only; simulate " + to_string(det_case) +
                          " with mc-cv");
    }
    const auto row = static_cast<std::size_t>(n_minus_r - 1);
    return {tables.johansen_trace[row][level_index(level)], tables.johansen_maxeig[row][level_index(level)]};
}

double cusum_coefficient(Level level) {
    switch (level) {
        case Level::P1: return 1.143;
        case Level::P5: return 0.948;
        case Level::P10: return 0.850;
    }
    throw ConfigError("unsupported significance level");
}

double cusumsq_c0(int m, Level level) {
    const auto idx = level_index(level);
    const auto* first = std::begin(kCusumsqTable);
    const auto* last = std::end(kCusumsqTable);
    if (m <= first->m) return first->c0[idx];
    const auto& tail = *(last - 1);
    if (m >= tail.m) {
        // Beyond the table the band shrinks like 1/sqrt(m).
        return tail.c0[idx] * std::sqrt(static_cast<double>(tail.m) / m);
    }
    const auto* hi = std::lower_bound(first, last, m, [](const Cusumsq& row, int v) { return row.m < v; });
    if (hi->m == m) return hi->c0[idx];
    const auto* lo = hi - 1;
    const double frac = static_cast<double>(m - lo->m) / (hi->m - lo->m);
    return lo->c0[idx] + frac * (hi->c0[idx] - lo->c0[idx]);
}

}  // namespace cointegra
