#include "cointegra/report.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "cointegra/errors.hpp"

namespace cointegra {

using nlohmann::json;

std::string stars(int n) { return std::string(static_cast<std::size_t>(std::clamp(n, 0, 3)), '*'); }

int stars_from_p(double p) {
    if (p < 0.01) return 3;
    if (p < 0.05) return 2;
    if (p < 0.10) return 1;
    return 0;
}

std::string fmt3(double x) {
    if (std::isnan(x)) return "NA";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", x);
    std::string s(buf);
    if (s == "-0.000") s = "0.000";
    return s;
}

namespace {

std::string fmt_sci(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

// --- JSON -------------------------------------------------------------------

json cell_json(const UnitRootCell& c) { return {{"statistic", c.statistic}, {"order", c.order}, {"stars", c.stars}}; }
UnitRootCell cell_from(const json& j) {
    return {j.at("statistic").get<double>(), j.at("order").get<int>(), j.at("stars").get<int>()};
}
json za_json(const ZaCell& c) {
    return {{"break_year", c.break_year}, {"statistic", c.statistic}, {"lags", c.lags}, {"stars", c.stars}};
}
ZaCell za_from(const json& j) {
    return {j.at("break_year").get<int>(), j.at("statistic").get<double>(), j.at("lags").get<int>(),
            j.at("stars").get<int>()};
}
json diag_json(const DiagnosticRow& d) {
    return {{"kind", "diagnostic"}, {"test", d.test}, {"statistic", d.statistic}, {"dof", d.dof},
            {"p_value", d.p_value}};
}
DiagnosticRow diag_from(const json& j) {
    return {j.at("test").get<std::string>(), j.at("statistic").get<double>(), j.at("dof").get<int>(),
            j.at("p_value").get<double>()};
}
json stab_json(const StabilityRow& s) {
    return {{"kind", "stability"}, {"test", s.test}, {"verdict", s.verdict}, {"points", s.points},
            {"exits", s.exits}};
}
StabilityRow stab_from(const json& j) {
    return {j.at("test").get<std::string>(), j.at("verdict").get<std::string>(), j.at("points").get<int>(),
            j.at("exits").get<int>()};
}

// --- plain-text grids --------------------------------------------------------

struct Grid {
    std::string title;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> notes;
};

std::string render_text(const Grid& g) {
    std::vector<std::size_t> w(g.header.size(), 0);
    auto widen = [&](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size() && i < w.size(); ++i) w[i] = std::max(w[i], row[i].size());
    };
    widen(g.header);
    for (const auto& r : g.rows) widen(r);
    std::ostringstream os;
    auto line = [&](const std::vector<std::string>& row) {
        std::string s;
        for (std::size_t i = 0; i < w.size(); ++i) {
            const std::string cell = i < row.size() ? row[i] : "";
            if (i > 0) s += "  ";
            s += i == 0 ? cell + std::string(w[i] - cell.size(), ' ') : std::string(w[i] - cell.size(), ' ') + cell;
        }
        while (!s.empty() && s.back() == ' ') s.pop_back();
        os << s << '\n';
    };
    std::size_t total = 0;
    for (auto x : w) total += x + 2;
    os << g.title << '\n' << std::string(total > 2 ? total - 2 : 0, '-') << '\n';
    line(g.header);
    os << std::string(total > 2 ? total - 2 : 0, '-') << '\n';
    for (const auto& r : g.rows) line(r);
    for (const auto& n : g.notes) os << n << '\n';
    return os.str();
}

std::string render_markdown(const Grid& g) {
    std::ostringstream os;
    os << "### " << g.title << "\n\n|";
    for (const auto& h : g.header) os << ' ' << h << " |";
    os << "\n|";
    for (std::size_t i = 0; i < g.header.size(); ++i) os << (i == 0 ? " --- |" : " ---: |");
    os << '\n';
    for (const auto& r : g.rows) {
        os << '|';
        for (std::size_t i = 0; i < g.header.size(); ++i) {
            std::string c = i < r.size() ? r[i] : "";
            // Stars would otherwise be read as emphasis.
            std::string esc;
            for (char ch : c) {
                if (ch == '*' || ch == '|') esc += '\\';
                esc += ch;
            }
            os << ' ' << esc << " |";
        }
        os << '\n';
    }
    if (!g.notes.empty()) os << '\n';
    for (const auto& n : g.notes) os << n << "  \n";
    return os.str();
}

std::string starred(double x, int n) { return fmt3(x) + stars(n); }

std::string versus(double stat, double cv, int n) {
    return fmt3(stat) + (stat > cv ? " > " : " < ") + fmt3(cv) + stars(n);
}

const char* kStarNote = "Note: ***, ** and * denote significance at the 1%, 5% and 10% levels.";

std::vector<Grid> grids(const PaperReport& r) {
    std::vector<Grid> out;
    const auto& meta = r.meta;
    auto skipped = [&](int t) -> std::optional<std::string> {
        const auto key = "table" + std::to_string(t);
        if (meta.contains("skipped") && meta["skipped"].contains(key)) return meta["skipped"][key].get<std::string>();
        return std::nullopt;
    };
    auto skip_grid = [&](int t, const std::string& title) {
        if (auto why = skipped(t)) {
            out.push_back({title, {"status"}, {{"skipped: " + *why}}, {}});
            return true;
        }
        return false;
    };

    if (!skip_grid(1, "Table 1: Descriptive statistics")) {
        Grid g{"Table 1: Descriptive statistics", {"Variable", "Description", "Obs.", "Mean", "SD", "Min.", "Max.",
                                                   "Source"}, {}, {}};
        for (const auto& d : r.table1) {
            g.rows.push_back({d.variable, d.description, std::to_string(d.n), fmt3(d.mean), fmt3(d.sd), fmt3(d.min),
                              fmt3(d.max), d.source});
        }
        if (meta.value("/config/log10"_json_pointer, false)) {
            g.notes.push_back("Note: statistics are of log10 values (log10 of % of GDP, of annual %, or of the index).");
        }
        out.push_back(std::move(g));
    }
    if (!skip_grid(2, "Table 2: Unit root tests")) {
        Grid g{"Table 2: Unit root tests",
               {"Variable", "Deterministic", "ADF level", "ADF diff", "PP level", "PP diff", "I(1)"}, {}, {}};
        for (const auto& u : r.table2) {
            auto cell = [](const UnitRootCell& c) { return starred(c.statistic, c.stars) + " (" + std::to_string(c.order) + ")"; };
            g.rows.push_back({u.variable, u.spec, cell(u.adf_level), cell(u.adf_diff), cell(u.pp_level),
                              cell(u.pp_diff), u.integrated_order_one ? "yes" : "no"});
        }
        g.notes.push_back("ADF lag order and PP bandwidth in parentheses.");
        g.notes.push_back(kStarNote);
        if (meta.contains("caveats")) {
            for (const auto& c : meta["caveats"]) g.notes.push_back("CAVEAT: " + c.get<std::string>());
        }
        out.push_back(std::move(g));
    }
    if (!skip_grid(3, "Table 3: Zivot-Andrews tests")) {
        Grid g{"Table 3: Zivot-Andrews tests",
               {"Variable", "Model", "Break (level)", "t (level)", "Break (diff)", "t (diff)"}, {}, {}};
        for (const auto& z : r.table3) {
            g.rows.push_back({z.variable, "Model " + z.model, std::to_string(z.level.break_year),
                              starred(z.level.statistic, z.level.stars), std::to_string(z.diff.break_year),
                              starred(z.diff.statistic, z.diff.stars)});
        }
        if (meta.contains("za_critical_values")) {
            for (const auto& [model, cv] : meta["za_critical_values"].items()) {
                g.notes.push_back("Critical values, Model " + model + ": 10% " + fmt3(cv.at("10%").get<double>()) +
                                  ", 5% " + fmt3(cv.at("5%").get<double>()) + ", 1% " +
                                  fmt3(cv.at("1%").get<double>()));
            }
        }
        g.notes.push_back(kStarNote);
        out.push_back(std::move(g));
    }
    if (!skip_grid(4, "Table 4: VAR lag order selection")) {
        Grid g{"Table 4: VAR lag order selection", {"Lag", "LogL", "LR", "FPE", "AIC", "SC", "HQ"}, {}, {}};
        auto mark = [](std::string s, bool b) { return b ? s + "*" : s; };
        for (const auto& l : r.table4) {
            g.rows.push_back({std::to_string(l.lag), fmt3(l.loglik), l.lr ? mark(fmt3(*l.lr), l.lr_selected) : "NA",
                              mark(fmt_sci(l.fpe), l.fpe_selected), mark(fmt3(l.aic), l.aic_selected),
                              mark(fmt3(l.sc), l.sc_selected), mark(fmt3(l.hq), l.hq_selected)});
        }
        g.notes.push_back("* marks the order selected by each criterion (LR: sequential test at 5%).");
        out.push_back(std::move(g));
    }
    auto diag_grid = [&](const std::string& title, const std::vector<DiagnosticRow>& d,
                         const std::vector<StabilityRow>& s, const std::string& attached) {
        Grid g{title, {"Diagnostic test", "Statistic", "dof", "P value"}, {}, {}};
        for (const auto& e : d) g.rows.push_back({e.test, fmt3(e.statistic), std::to_string(e.dof), fmt3(e.p_value)});
        for (const auto& e : s) g.rows.push_back({e.test, "", "", e.verdict});
        if (!attached.empty()) g.notes.push_back("Diagnostics refer to: " + attached);
        return g;
    };
    if (!skip_grid(5, "Table 5: Johansen cointegration tests")) {
        std::string lvl = meta.value("/config/level"_json_pointer, std::string("5%"));
        Grid g{"Table 5: Johansen cointegration tests",
               {"H0", "Eigenvalue", "Trace vs CV (" + lvl + ")", "Max-eigenvalue vs CV (" + lvl + ")"}, {}, {}};
        for (const auto& k : r.table5_rank) {
            g.rows.push_back({k.r == 0 ? "r = 0" : "r <= " + std::to_string(k.r), fmt3(k.eigenvalue),
                              versus(k.trace, k.trace_cv, k.trace_stars), versus(k.maxeig, k.maxeig_cv, k.maxeig_stars)});
        }
        if (meta.contains("johansen")) {
            const auto& jm = meta["johansen"];
            g.notes.push_back("Decided rank (trace): " + std::to_string(jm.value("decided_rank", 0)) +
                              "; (max-eigenvalue): " + std::to_string(jm.value("maxeig_decided_rank", 0)) + ".");
        }
        g.notes.push_back(kStarNote);
        out.push_back(std::move(g));
        out.push_back(diag_grid("Table 5 (cont.): Diagnostic tests", r.table5_diagnostics, r.table5_stability,
                                meta.value("/diagnostics/table5"_json_pointer, std::string{})));
    }
    if (!skip_grid(6, "Table 6: DOLS long-run estimates")) {
        Grid g{"Table 6: DOLS long-run estimates",
               {"Dependent variable: " + meta.value("/config/dependent"_json_pointer, std::string("y")), "Coefficient",
                "Std. Error", "t-Statistic", "P value"}, {}, {}};
        for (const auto& c : r.table6) {
            g.rows.push_back({c.variable, starred(c.coefficient, c.stars), fmt3(c.std_error), fmt3(c.t_ratio),
                              fmt3(c.p_value)});
        }
        if (meta.contains("dols")) {
            const auto& dm = meta["dols"];
            g.notes.push_back("Leads " + std::to_string(dm.value("leads", 0)) + ", lags " +
                              std::to_string(dm.value("lags", 0)) + ", HAC bandwidth " +
                              std::to_string(dm.value("bandwidth", 0)) + ", " + std::to_string(dm.value("n_obs", 0)) +
                              " observations.");
        }
        g.notes.push_back(kStarNote);
        out.push_back(std::move(g));
        out.push_back(diag_grid("Table 6 (cont.): Diagnostic tests", r.table6_diagnostics, r.table6_stability,
                                meta.value("/diagnostics/table6"_json_pointer, std::string{})));
    }
    return out;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string csv_value(const json& v) {
    if (v.is_null()) return "NA";
    if (v.is_string()) return csv_escape(v.get<std::string>());
    if (v.is_number_float()) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
        return buf;
    }
    return v.dump();
}

std::string render_csv(const json& j) {
    std::ostringstream os;
    for (int t = 1; t <= 6; ++t) {
        const auto key = "table" + std::to_string(t);
        os << "# " << key << '\n';
        std::vector<json> rows;
        for (const auto& row : j.at(key)) {
            json flat = json::object();
            const json leaves = row.flatten();
            for (const auto& [k, v] : leaves.items()) {
                std::string name = k.substr(1);
                std::replace(name.begin(), name.end(), '/', '.');
                flat[name] = v;
            }
            rows.push_back(flat);
        }
        std::vector<std::string> cols;
        for (const auto& row : rows) {
            for (const auto& [k, _] : row.items()) {
                if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
            }
        }
        for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
        os << '\n';
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < cols.size(); ++i) {
                os << (i ? "," : "") << (row.contains(cols[i]) ? csv_value(row.at(cols[i])) : "");
            }
            os << '\n';
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace

json to_json(const PaperReport& r) {
    json j;
    j["meta"] = r.meta;
    json t1 = json::array();
    for (const auto& d : r.table1) {
        t1.push_back({{"variable", d.variable}, {"description", d.description}, {"source", d.source}, {"n", d.n},
                      {"mean", d.mean}, {"sd", d.sd}, {"min", d.min}, {"max", d.max}});
    }
    json t2 = json::array();
    for (const auto& u : r.table2) {
        t2.push_back({{"variable", u.variable}, {"spec", u.spec}, {"adf_level", cell_json(u.adf_level)},
                      {"adf_diff", cell_json(u.adf_diff)}, {"pp_level", cell_json(u.pp_level)},
                      {"pp_diff", cell_json(u.pp_diff)}, {"integrated_order_one", u.integrated_order_one}});
    }
    json t3 = json::array();
    for (const auto& z : r.table3) {
        t3.push_back({{"variable", z.variable}, {"model", z.model}, {"level", za_json(z.level)},
                      {"diff", za_json(z.diff)}});
    }
    json t4 = json::array();
    for (const auto& l : r.table4) {
        t4.push_back({{"lag", l.lag}, {"loglik", l.loglik}, {"lr", l.lr ? json(*l.lr) : json(nullptr)},
                      {"fpe", l.fpe}, {"aic", l.aic}, {"sc", l.sc}, {"hq", l.hq},
                      {"selected", {{"lr", l.lr_selected}, {"fpe", l.fpe_selected}, {"aic", l.aic_selected},
                                    {"sc", l.sc_selected}, {"hq", l.hq_selected}}}});
    }
    json t5 = json::array();
    for (const auto& k : r.table5_rank) {
        t5.push_back({{"kind", "rank"}, {"r", k.r}, {"eigenvalue", k.eigenvalue}, {"trace", k.trace},
                      {"trace_cv", k.trace_cv}, {"trace_stars", k.trace_stars}, {"maxeig", k.maxeig},
                      {"maxeig_cv", k.maxeig_cv}, {"maxeig_stars", k.maxeig_stars}});
    }
    for (const auto& d : r.table5_diagnostics) t5.push_back(diag_json(d));
    for (const auto& s : r.table5_stability) t5.push_back(stab_json(s));
    json t6 = json::array();
    for (const auto& c : r.table6) {
        t6.push_back({{"kind", "coefficient"}, {"variable", c.variable}, {"coefficient", c.coefficient},
                      {"std_error", c.std_error}, {"t_ratio", c.t_ratio}, {"p_value", c.p_value},
                      {"stars", c.stars}});
    }
    for (const auto& d : r.table6_diagnostics) t6.push_back(diag_json(d));
    for (const auto& s : r.table6_stability) t6.push_back(stab_json(s));
    j["table1"] = t1;
    j["table2"] = t2;
    j["table3"] = t3;
    j["table4"] = t4;
    j["table5"] = t5;
    j["table6"] = t6;
    return j;
}

PaperReport report_from_json(const json& j) {
    PaperReport r;
    try {
        r.meta = j.at("meta");
        for (const auto& d : j.at("table1")) {
            r.table1.push_back({d.at("variable"), d.at("description"), d.at("source"), d.at("n"), d.at("mean"),
                                d.at("sd"), d.at("min"), d.at("max")});
        }
        for (const auto& u : j.at("table2")) {
            r.table2.push_back({u.at("variable"), u.at("spec"), cell_from(u.at("adf_level")),
                                cell_from(u.at("adf_diff")), cell_from(u.at("pp_level")), cell_from(u.at("pp_diff")),
                                u.at("integrated_order_one")});
        }
        for (const auto& z : j.at("table3")) {
            r.table3.push_back({z.at("variable"), z.at("model"), za_from(z.at("level")), za_from(z.at("diff"))});
        }
        for (const auto& l : j.at("table4")) {
            LagRow row;
            row.lag = l.at("lag");
            row.loglik = l.at("loglik");
            if (!l.at("lr").is_null()) row.lr = l.at("lr").get<double>();
            row.fpe = l.at("fpe");
            row.aic = l.at("aic");
            row.sc = l.at("sc");
            row.hq = l.at("hq");
            const auto& s = l.at("selected");
            row.lr_selected = s.at("lr");
            row.fpe_selected = s.at("fpe");
            row.aic_selected = s.at("aic");
            row.sc_selected = s.at("sc");
            row.hq_selected = s.at("hq");
            r.table4.push_back(row);
        }
        for (const auto& x : j.at("table5")) {
            const auto kind = x.at("kind").get<std::string>();
            if (kind == "rank") {
                r.table5_rank.push_back({x.at("r"), x.at("eigenvalue"), x.at("trace"), x.at("trace_cv"),
                                         x.at("maxeig"), x.at("maxeig_cv"), x.at("trace_stars"),
                                         x.at("maxeig_stars")});
            } else if (kind == "diagnostic") {
                r.table5_diagnostics.push_back(diag_from(x));
            } else {
                r.table5_stability.push_back(stab_from(x));
            }
        }
        for (const auto& x : j.at("table6")) {
            const auto kind = x.at("kind").get<std::string>();
            if (kind == "coefficient") {
                r.table6.push_back({x.at("variable"), x.at("coefficient"), x.at("std_error"), x.at("t_ratio"),
                                    x.at("p_value"), x.at("stars")});
            } else if (kind == "diagnostic") {
                r.table6_diagnostics.push_back(diag_from(x));
            } else {
                r.table6_stability.push_back(stab_from(x));
            }
        }
    } catch (const json::exception& e) {
        throw DataError(std::string("malformed report JSON: ") + e.what());
    }
    return r;
}

ReportFormat report_format_from_string(const std::string& s) {
    if (s == "text" || s == "txt") return ReportFormat::Text;
    if (s == "markdown" || s == "md") return ReportFormat::Markdown;
    if (s == "csv") return ReportFormat::Csv;
    if (s == "json") return ReportFormat::Json;
    throw ConfigError("unknown format '" + s + "' (expected text, markdown, csv or json)");
}

std::string emit(const PaperReport& r, ReportFormat format) {
    switch (format) {
        case ReportFormat::Json: return to_json(r).dump(2) + "\n";
        case ReportFormat::Csv: return render_csv(to_json(r));
        case ReportFormat::Text:
        case ReportFormat::Markdown: {
            std::string out;
            for (const auto& g : grids(r)) {
                out += format == ReportFormat::Text ? render_text(g) : render_markdown(g);
                out += '\n';
            }
            return out;
        }
    }
    return {};
}

std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw NumericalError("SHA-256 computation failed");
    }
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xF];
    }
    return out;
}

}  // namespace cointegra
