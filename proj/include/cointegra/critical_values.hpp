#pragma once

#include <array>

#include "cointegra/common.hpp"

namespace cointegra {

/**
 * Every critical-value constant the library embeds.
 *
 * Kept as a plain value so the Monte Carlo validator can be pointed at a
 * modified copy.
 */
struct CriticalValueTables {
    /// Dickey-Fuller response surface, cv(T) = b0 + b1/T + b2/T^2 + b3/T^3
    /// (MacKinnon 2010). Indexed [deterministic][level][coefficient].
    std::array<std::array<std::array<double, 4>, 3>, 3> dickey_fuller{};
    /// Zivot-Andrews constants, [model][level].
    std::array<std::array<double, 3>, 3> zivot_andrews{};
    /// Johansen case 3 (MacKinnon-Haug-Michelis 1999), [n - r - 1][level].
    std::array<std::array<double, 3>, 12> johansen_trace{};
    std::array<std::array<double, 3>, 12> johansen_maxeig{};
};

const CriticalValueTables& embedded_tables();

/// Lower-tail Dickey-Fuller critical value for a regression with `n` observations.
/// n <= 0 returns the asymptotic value.
double df_critical_value(Deterministic spec, int n, Level level,
                         const CriticalValueTables& tables = embedded_tables());

double za_critical_value(ZaModel model, Level level, const CriticalValueTables& tables = embedded_tables());

struct JohansenCriticalValues {
    double trace = 0.0;
    double maxeig = 0.0;
};

/// Upper-tail critical values for n - r common trends. Only case 3 is tabulated;
/// other cases throw ConfigError (use the Monte Carlo simulator instead).
JohansenCriticalValues johansen_critical_values(int n_minus_r, JohansenCase det_case, Level level,
                                                const CriticalValueTables& tables = embedded_tables());

/// CUSUM band coefficient a (1%: 1.143, 5%: 0.948, 10%: 0.850).
double cusum_coefficient(Level level);

/// Half-width c0 of the CUSUM-of-squares band for m = T - k recursive residuals,
/// linearly interpolated in m.
double cusumsq_c0(int m, Level level);

}  // namespace cointegra
