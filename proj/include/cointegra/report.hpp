#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cointegra {

struct DescriptiveRow {
    std::string variable;
    std::string description;
    std::string source;
    int n = 0;
    double mean = 0.0;
    double sd = 0.0;
    double min = 0.0;
    double max = 0.0;
};

struct UnitRootCell {
    double statistic = 0.0;
    int order = 0;  ///< ADF lag order or PP bandwidth
    int stars = 0;
};

struct UnitRootRow {
    std::string variable;
    std::string spec;  ///< deterministic terms
    UnitRootCell adf_level, adf_diff, pp_level, pp_diff;
    bool integrated_order_one = false;  ///< ADF: level not rejected, difference rejected, at the configured level
};

struct ZaCell {
    int break_year = 0;
    double statistic = 0.0;
    int lags = 0;
    int stars = 0;
};

struct ZaRow {
    std::string variable;
    std::string model;
    ZaCell level, diff;
};

struct LagRow {
    int lag = 0;
    double loglik = 0.0;
    std::optional<double> lr;
    double fpe = 0.0, aic = 0.0, sc = 0.0, hq = 0.0;
    bool lr_selected = false, fpe_selected = false, aic_selected = false, sc_selected = false, hq_selected = false;
};

struct RankReportRow {
    int r = 0;
    double eigenvalue = 0.0;
    double trace = 0.0, trace_cv = 0.0;
    double maxeig = 0.0, maxeig_cv = 0.0;
    int trace_stars = 0, maxeig_stars = 0;
};

struct DiagnosticRow {
    std::string test;
    double statistic = 0.0;
    int dof = 0;
    double p_value = 1.0;
};

struct StabilityRow {
    std::string test;  ///< "CUSUM" or "CUSUMSQ"
    std::string verdict;
    int points = 0;
    int exits = 0;
};

struct CoefficientRow {
    std::string variable;
    double coefficient = 0.0, std_error = 0.0, t_ratio = 0.0, p_value = 1.0;
    int stars = 0;
};

struct PaperReport {
    nlohmann::json meta = nlohmann::json::object();
    std::vector<DescriptiveRow> table1;
    std::vector<UnitRootRow> table2;
    std::vector<ZaRow> table3;
    std::vector<LagRow> table4;
    std::vector<RankReportRow> table5_rank;
    std::vector<DiagnosticRow> table5_diagnostics;
    std::vector<StabilityRow> table5_stability;
    std::vector<CoefficientRow> table6;
    std::vector<DiagnosticRow> table6_diagnostics;
    std::vector<StabilityRow> table6_stability;
};

/// "***", "**", "*" or "" for 3..0 levels rejected.
std::string stars(int n);
/// Stars from a two-sided p-value at 1/5/10%.
int stars_from_p(double p);
/// Fixed 3-decimal rendering.
std::string fmt3(double x);

nlohmann::json to_json(const PaperReport& r);
PaperReport report_from_json(const nlohmann::json& j);

enum class ReportFormat { Text, Markdown, Csv, Json };
ReportFormat report_format_from_string(const std::string& s);

std::string emit(const PaperReport& r, ReportFormat format);

/// Lower-case hex SHA-256.
std::string sha256_hex(std::string_view bytes);

}  // namespace cointegra
