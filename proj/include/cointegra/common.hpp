#pragma once

#include <array>
#include <string>

namespace cointegra {

/// Significance level of a test.
enum class Level { P1, P5, P10 };

inline constexpr std::array<Level, 3> kAllLevels{Level::P1, Level::P5, Level::P10};

double level_fraction(Level level);
std::string to_string(Level level);
/// Accepts "1", "1%", "0.01" (and the 5/10 analogues).
Level level_from_string(const std::string& s);

/// Deterministic terms of a Dickey-Fuller type regression.
enum class Deterministic { None, Constant, ConstantTrend };

std::string to_string(Deterministic d);
/// Accepts "none"/"n"/"nc", "constant"/"c", "trend"/"ct"/"constant+trend".
Deterministic deterministic_from_string(const std::string& s);
int num_deterministic_terms(Deterministic d);

/// Zivot-Andrews break model: A intercept, B trend, C both.
enum class ZaModel { A, B, C };

std::string to_string(ZaModel m);
ZaModel za_model_from_string(const std::string& s);

/// Johansen deterministic case.
enum class JohansenCase {
    None = 1,               ///< no deterministic terms
    RestrictedConstant = 2, ///< constant inside the cointegrating relation
    UnrestrictedConstant = 3,
    RestrictedTrend = 4,    ///< unrestricted constant, trend inside the cointegrating relation
};

std::string to_string(JohansenCase c);
JohansenCase johansen_case_from_int(int c);

}  // namespace cointegra
