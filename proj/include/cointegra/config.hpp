#pragma once

#include <cstdint>
#include <json.hpp>
#include <string>
#include <vector>

#include "cointegra/common.hpp"
#include "cointegra/diagnostics.hpp"
#include "cointegra/linreg.hpp"

namespace cointegra {

/// A model role (e.g. "EXP") and the source series that fills it.
struct VariableSpec {
    std::string role;
    std::string code;         ///< WDI/EVDS series code or plain-file series name
    std::string description;  ///< shown in the descriptive table
    std::string source;       ///< "WB", "EVDS", ...
};

std::vector<VariableSpec> default_variables();

struct PipelineConfig {
    int start_year = 1995;
    int end_year = 2023;
    std::string dependent = "EXP";
    std::vector<std::string> regressors{"EXC", "INF", "FDI", "IMP"};
    std::vector<VariableSpec> variables = default_variables();
    std::string entity;  ///< WDI country code; empty accepts a single country
    bool log10 = true;

    std::vector<Deterministic> unit_root_specs{Deterministic::Constant, Deterministic::ConstantTrend};
    int adf_max_lags = -1;  ///< -1: floor(12 (T/100)^(1/4)) trimmed to the sample
    Criterion adf_criterion = Criterion::SC;
    int pp_bandwidth = -1;  ///< -1: floor(4 (T/100)^(2/9))

    std::vector<ZaModel> za_models{ZaModel::A, ZaModel::C};
    double za_trimming = 0.15;
    int za_max_lags = -1;

    int pmax = 2;
    Criterion vecm_lag_criterion = Criterion::AIC;
    JohansenCase johansen_case = JohansenCase::UnrestrictedConstant;
    int johansen_diff_lags = -1;  ///< -1: selected VAR order - 1
    /// Simulated critical values for Johansen cases without an embedded table.
    int mc_reps = 2000;
    std::uint64_t mc_seed = 20240917;

    std::string dols_order = "fixed";  ///< "fixed" or "select"
    int dols_leads = 1;
    int dols_lags = 1;
    int dols_max_order = 2;
    int dols_bandwidth = -1;  ///< -1: automatic

    Level level = Level::P5;
    int bg_order = 2;
    HetKind het = HetKind::BreuschPagan;
    std::vector<int> reset_powers{2};

    std::vector<int> tables{1, 2, 3, 4, 5, 6};
    std::string format = "text";

    [[nodiscard]] bool table_enabled(int t) const;
    [[nodiscard]] const VariableSpec& variable(const std::string& role) const;
    /// Dependent first, then regressors.
    [[nodiscard]] std::vector<std::string> roles() const;
};

/// Throws ConfigError on the first violated constraint.
void validate(const PipelineConfig& c);

nlohmann::json to_json(const PipelineConfig& c);
/// Keys absent from `j` keep their defaults; unknown keys are rejected.
PipelineConfig config_from_json(const nlohmann::json& j);
PipelineConfig load_config(const std::string& path);

}  // namespace cointegra
