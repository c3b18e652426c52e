#include "cointegra/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "cointegra/errors.hpp"

namespace cointegra {

using nlohmann::json;

std::vector<VariableSpec> default_variables() {
    return {
        {"EXP", "NE.EXP.GNFS.ZS", "Exports (% of GDP)", "WB"},
        {"EXC", "TP.RK.T1.Y", "Real effective exchange rate", "EVDS"},
        {"INF", "FP.CPI.TOTL.ZG", "Consumer prices (%)", "WB"},
        {"FDI", "BX.KLT.DINV.WD.GD.ZS", "Net inflows (% of GDP)", "WB"},
        {"IMP", "NE.IMP.GNFS.ZS", "Imports (% of GDP)", "WB"},
    };
}

bool PipelineConfig::table_enabled(int t) const { return std::find(tables.begin(), tables.end(), t) != tables.end(); }

const VariableSpec& PipelineConfig::variable(const std::string& role) const {
    for (const auto& v : variables) {
        if (v.role == role) return v;
    }
    throw ConfigError("no variable mapped to role '" + role + "'");
}

std::vector<std::string> PipelineConfig::roles() const {
    std::vector<std::string> r{dependent};
    r.insert(r.end(), regressors.begin(), regressors.end());
    return r;
}

void validate(const PipelineConfig& c) {
    if (c.regressors.empty()) throw ConfigError("at least one regressor is required");
    if (std::find(c.regressors.begin(), c.regressors.end(), c.dependent) != c.regressors.end()) {
        throw ConfigError("dependent variable '" + c.dependent + "' is also listed among the regressors");
    }
    std::set<std::string> seen;
    for (const auto& r : c.roles()) {
        if (!seen.insert(r).second) throw ConfigError("role '" + r + "' listed twice");
        (void)c.variable(r);
    }
    std::set<std::string> mapped;
    for (const auto& v : c.variables) {
        if (v.role.empty() || v.code.empty()) throw ConfigError("variable entries need a role and a code");
        if (!mapped.insert(v.role).second) throw ConfigError("role '" + v.role + "' mapped twice");
    }
    if (c.start_year < 1900 || c.end_year > 2100 || c.start_year > c.end_year) {
        throw ConfigError("year range " + std::to_string(c.start_year) + "-" + std::to_string(c.end_year) +
                          " is invalid");
    }
    if (c.end_year - c.start_year + 1 < 15) {
        throw ConfigError("the full pipeline needs at least 15 years, range covers " +
                          std::to_string(c.end_year - c.start_year + 1));
    }
    if (c.unit_root_specs.empty()) throw ConfigError("unit_root_specs is empty");
    if (!(c.za_trimming > 0.0 && c.za_trimming < 0.5)) throw ConfigError("za_trimming must lie in (0, 0.5)");
    if (c.pmax < 1) throw ConfigError("pmax must be at least 1");
    if (c.johansen_diff_lags < -1) throw ConfigError("johansen_diff_lags must be -1 (derived) or >= 0");
    if (c.mc_reps < 1000) throw ConfigError("mc_reps must be at least 1000");
    if (c.dols_order != "fixed" && c.dols_order != "select") {
        throw ConfigError("dols_order must be 'fixed' or 'select'");
    }
    if (c.dols_leads < 0 || c.dols_lags < 0 || c.dols_max_order < 0) {
        throw ConfigError("DOLS leads, lags and max order must be non-negative");
    }
    if (c.bg_order < 1) throw ConfigError("bg_order must be at least 1");
    for (int p : c.reset_powers) {
        if (p < 2 || p > 3) throw ConfigError("reset_powers must be drawn from {2, 3}");
    }
    for (int t : c.tables) {
        if (t < 1 || t > 6) throw ConfigError("tables must be drawn from 1..6");
    }
    static const std::set<std::string> formats{"text", "markdown", "csv", "json"};
    if (!formats.count(c.format)) throw ConfigError("unknown output format '" + c.format + "'");
}

json to_json(const PipelineConfig& c) {
    json vars = json::array();
    for (const auto& v : c.variables) {
        vars.push_back({{"role", v.role}, {"code", v.code}, {"description", v.description}, {"source", v.source}});
    }
    std::vector<std::string> specs, models;
    for (auto s : c.unit_root_specs) specs.push_back(to_string(s));
    for (auto m : c.za_models) models.push_back(to_string(m));
    return json{
        {"start_year", c.start_year},
        {"end_year", c.end_year},
        {"dependent", c.dependent},
        {"regressors", c.regressors},
        {"variables", vars},
        {"entity", c.entity},
        {"log10", c.log10},
        {"unit_root_specs", specs},
        {"adf_max_lags", c.adf_max_lags},
        {"adf_criterion", to_string(c.adf_criterion)},
        {"pp_bandwidth", c.pp_bandwidth},
        {"za_models", models},
        {"za_trimming", c.za_trimming},
        {"za_max_lags", c.za_max_lags},
        {"pmax", c.pmax},
        {"vecm_lag_criterion", to_string(c.vecm_lag_criterion)},
        {"johansen_case", static_cast<int>(c.johansen_case)},
        {"johansen_diff_lags", c.johansen_diff_lags},
        {"mc_reps", c.mc_reps},
        {"mc_seed", c.mc_seed},
        {"dols_order", c.dols_order},
        {"dols_leads", c.dols_leads},
        {"dols_lags", c.dols_lags},
        {"dols_max_order", c.dols_max_order},
        {"dols_bandwidth", c.dols_bandwidth},
        {"level", to_string(c.level)},
        {"bg_order", c.bg_order},
        {"het", to_string(c.het)},
        {"reset_powers", c.reset_powers},
        {"tables", c.tables},
        {"format", c.format},
    };
}

PipelineConfig config_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("configuration must be a JSON object");
    static const std::set<std::string> known{
        "start_year", "end_year", "dependent", "regressors", "variables", "entity", "log10",
        "unit_root_specs", "adf_max_lags", "adf_criterion", "pp_bandwidth", "za_models", "za_trimming",
        "za_max_lags", "pmax", "vecm_lag_criterion", "johansen_case", "johansen_diff_lags", "mc_reps", "mc_seed", "dols_order",
        "dols_leads", "dols_lags", "dols_max_order", "dols_bandwidth", "level", "bg_order", "het",
        "reset_powers", "tables", "format"};
    for (const auto& [k, _] : j.items()) {
        if (!known.count(k)) throw ConfigError("unknown configuration key '" + k + "'");
    }
    PipelineConfig c;
    try {
        auto get = [&](const char* key, auto& field) {
            if (j.contains(key)) j.at(key).get_to(field);
        };
        get("start_year", c.start_year);
        get("end_year", c.end_year);
        get("dependent", c.dependent);
        get("regressors", c.regressors);
        get("entity", c.entity);
        get("log10", c.log10);
        get("adf_max_lags", c.adf_max_lags);
        get("pp_bandwidth", c.pp_bandwidth);
        get("za_trimming", c.za_trimming);
        get("za_max_lags", c.za_max_lags);
        get("pmax", c.pmax);
        get("johansen_diff_lags", c.johansen_diff_lags);
        get("mc_reps", c.mc_reps);
        get("mc_seed", c.mc_seed);
        get("dols_order", c.dols_order);
        get("dols_leads", c.dols_leads);
        get("dols_lags", c.dols_lags);
        get("dols_max_order", c.dols_max_order);
        get("dols_bandwidth", c.dols_bandwidth);
        get("bg_order", c.bg_order);
        get("reset_powers", c.reset_powers);
        get("tables", c.tables);
        get("format", c.format);
        if (j.contains("variables")) {
            c.variables.clear();
            for (const auto& v : j.at("variables")) {
                VariableSpec s;
                s.role = v.at("role").get<std::string>();
                s.code = v.at("code").get<std::string>();
                s.description = v.value("description", std::string{});
                s.source = v.value("source", std::string{});
                c.variables.push_back(s);
            }
        }
        if (j.contains("unit_root_specs")) {
            c.unit_root_specs.clear();
            for (const auto& s : j.at("unit_root_specs")) c.unit_root_specs.push_back(deterministic_from_string(s));
        }
        if (j.contains("za_models")) {
            c.za_models.clear();
            for (const auto& s : j.at("za_models")) c.za_models.push_back(za_model_from_string(s));
        }
        if (j.contains("adf_criterion")) c.adf_criterion = criterion_from_string(j.at("adf_criterion"));
        if (j.contains("vecm_lag_criterion")) {
            c.vecm_lag_criterion = criterion_from_string(j.at("vecm_lag_criterion"));
        }
        if (j.contains("johansen_case")) c.johansen_case = johansen_case_from_int(j.at("johansen_case").get<int>());
        if (j.contains("level")) c.level = level_from_string(j.at("level").get<std::string>());
        if (j.contains("het")) c.het = het_kind_from_string(j.at("het"));
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed configuration: ") + e.what());
    }
    validate(c);
    return c;
}

PipelineConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open configuration file '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("configuration '" + path + "' is not valid JSON: " + e.what());
    }
    return config_from_json(j);
}

}  // namespace cointegra
