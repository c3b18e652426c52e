#include "cointegra/common.hpp"

#include <algorithm>
#include <cctype>

#include "cointegra/errors.hpp"

namespace cointegra {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

}  // namespace

double level_fraction(Level level) {
    switch (level) {
        case Level::P1: return 0.01;
        case Level::P5: return 0.05;
        case Level::P10: return 0.10;
    }
    return 0.05;
}

std::string to_string(Level level) {
    switch (level) {
        case Level::P1: return "1%";
        case Level::P5: return "5%";
        case Level::P10: return "10%";
    }
    return "?";
}

Level level_from_string(const std::string& s) {
    if (s == "1" || s == "1%" || s == "0.01") return Level::P1;
    if (s == "5" || s == "5%" || s == "0.05") return Level::P5;
    if (s == "10" || s == "10%" || s == "0.1" || s == "0.10") return Level::P10;
    throw ConfigError("unsupported significance level '" + s + "' (use 1, 5 or 10)");
}

std::string to_string(Deterministic d) {
    switch (d) {
        case Deterministic::None: return "none";
        case Deterministic::Constant: return "constant";
        case Deterministic::ConstantTrend: return "constant+trend";
    }
    return "?";
}

Deterministic deterministic_from_string(const std::string& s) {
    const auto v = lower(s);
    if (v == "none" || v == "n" || v == "nc") return Deterministic::None;
    if (v == "constant" || v == "c") return Deterministic::Constant;
    if (v == "constant+trend" || v == "ct" || v == "trend") return Deterministic::ConstantTrend;
    throw ConfigError("unknown deterministic specification '" + s + "'");
}

int num_deterministic_terms(Deterministic d) {
    switch (d) {
        case Deterministic::None: return 0;
        case Deterministic::Constant: return 1;
        case Deterministic::ConstantTrend: return 2;
    }
    return 0;
}

std::string to_string(ZaModel m) {
    switch (m) {
        case ZaModel::A: return "A";
        case ZaModel::B: return "B";
        case ZaModel::C: return "C";
    }
    return "?";
}

ZaModel za_model_from_string(const std::string& s) {
    const auto v = lower(s);
    if (v == "a" || v == "intercept") return ZaModel::A;
    if (v == "b" || v == "trend") return ZaModel::B;
    if (v == "c" || v == "both") return ZaModel::C;
    throw ConfigError("unknown Zivot-Andrews model '" + s + "'");
}

std::string to_string(JohansenCase c) {
    return "case " + std::to_string(static_cast<int>(c));
}

JohansenCase johansen_case_from_int(int c) {
    if (c < 1 || c > 4) {
        throw ConfigError("Johansen deterministic case must be 1..4, got " + std::to_string(c));
    }
    return static_cast<JohansenCase>(c);
}

}  // namespace cointegra
