// cointegra command-line interface.
//
//   cointegra pipeline --data data/turkiye --format json
//   cointegra unitroot --series EXP --spec ct
//   cointegra mc-cv --target za:C --T 500 --reps 5000
//   cointegra mc-cv validate_tables

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cointegra/config.hpp"
#include "cointegra/diagnostics.hpp"
#include "cointegra/dols.hpp"
#include "cointegra/errors.hpp"
#include "cointegra/ingest.hpp"
#include "cointegra/johansen.hpp"
#include "cointegra/mccv.hpp"
#include "cointegra/pipeline.hpp"
#include "cointegra/report.hpp"
#include "cointegra/unitroot.hpp"
#include "cointegra/varselect.hpp"
#include "cointegra/zabreak.hpp"

namespace fs = std::filesystem;
using namespace cointegra;
using nlohmann::json;

namespace {

struct DataOptions {
    std::vector<std::string> data;
    std::string config;
    std::string name;  // series name for a single plain year,value file
    bool raw = false;
};

std::string default_data_dir() {
    if (const char* env = std::getenv("COINTEGRA_DATA_DIR"); env && *env) return env;
    return COINTEGRA_DEFAULT_DATA_DIR;
}

std::vector<fs::path> expand(const std::vector<std::string>& inputs) {
    std::vector<fs::path> files;
    for (const auto& in : inputs.empty() ? std::vector<std::string>{default_data_dir()} : inputs) {
        const fs::path p(in);
        if (fs::is_directory(p)) {
            std::vector<fs::path> found;
            for (const auto& e : fs::directory_iterator(p)) {
                if (e.is_regular_file() && e.path().extension() == ".csv") found.push_back(e.path());
            }
            std::sort(found.begin(), found.end());
            if (found.empty()) throw DataError("no .csv files in '" + p.string() + "'");
            files.insert(files.end(), found.begin(), found.end());
        } else if (fs::is_regular_file(p)) {
            files.push_back(p);
        } else {
            throw DataError("data path '" + p.string() + "' does not exist");
        }
    }
    return files;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

PipelineConfig load(const DataOptions& o) { return o.config.empty() ? PipelineConfig{} : load_config(o.config); }

struct Loaded {
    PipelineConfig config;
    IngestResult ingest;
    std::vector<Provenance> provenance;
};

Loaded load_data(const DataOptions& o) {
    Loaded l;
    l.config = load(o);
    std::vector<RawRecord> records;
    for (const auto& f : expand(o.data)) {
        auto recs = read_csv_file(f, std::nullopt, o.name);
        const std::string kind = recs.empty() ? "empty" : to_string(recs.front().source);
        l.provenance.push_back({f.filename().string(), kind, sha256_hex(slurp(f))});
        records.insert(records.end(), std::make_move_iterator(recs.begin()), std::make_move_iterator(recs.end()));
    }
    l.ingest = ingest(records, l.config);
    return l;
}

const Dataset& chosen(const Loaded& l, const DataOptions& o) { return o.raw ? l.ingest.raw : l.ingest.dataset; }

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

void add_data_options(CLI::App* app, DataOptions& o) {
    app->add_option("--data", o.data, "CSV file(s) or directories (default: $COINTEGRA_DATA_DIR or bundled fixture)");
    app->add_option("--config", o.config, "pipeline configuration JSON");
    app->add_option("--name", o.name, "series name for a plain year,value file");
    app->add_flag("--raw", o.raw, "use untransformed values");
}

json levels_json(const std::map<Level, double>& cvs) {
    json j = json::object();
    for (const auto& [l, v] : cvs) j[to_string(l)] = v;
    return j;
}

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Unit roots, cointegration and long-run estimation for annual macro series"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(COINTEGRA_VERSION));

    DataOptions data;
    std::string format = "text";
    std::string output;
    std::string series;
    std::string vars;
    std::string spec = "c";
    std::string level = "5%";

    // pipeline
    auto* pipeline = app.add_subcommand("pipeline", "run the full analysis and emit Tables 1-6");
    add_data_options(pipeline, data);
    std::string pipeline_format;
    pipeline->add_option("--format", pipeline_format, "text, markdown, csv or json (default: from config)");
    pipeline->add_option("--output,-o", output, "write to file instead of stdout");

    // describe
    auto* describe_cmd = app.add_subcommand("describe", "descriptive statistics of the ingested series");
    add_data_options(describe_cmd, data);
    describe_cmd->add_option("--format", format, "text or json");

    // unitroot
    auto* unitroot = app.add_subcommand("unitroot", "ADF and PP tests");
    add_data_options(unitroot, data);
    unitroot->add_option("--series", series, "series (role) names, comma separated; default all");
    unitroot->add_option("--spec", spec, "deterministic terms: nc, c or ct");
    unitroot->add_option("--level", level, "significance level: 1, 5 or 10");
    int ur_lags = -1;
    int ur_max_lags = -1;
    int ur_bandwidth = -1;
    bool ur_diff = false;
    unitroot->add_option("--lags", ur_lags, "fixed ADF lag order (default: chosen by SC)");
    unitroot->add_option("--max-lags", ur_max_lags, "largest ADF lag order considered");
    unitroot->add_option("--bandwidth", ur_bandwidth, "PP bandwidth (default: automatic)");
    unitroot->add_flag("--diff", ur_diff, "test first differences");

    // za
    auto* za = app.add_subcommand("za", "Zivot-Andrews test with one endogenous break");
    add_data_options(za, data);
    za->add_option("--series", series, "series names, comma separated; default all");
    std::string model = "A";
    double trim = 0.15;
    bool za_diff = false;
    za->add_option("--model", model, "A, B or C");
    za->add_option("--trim", trim, "trimming fraction");
    za->add_option("--level", level, "significance level");
    za->add_flag("--diff", za_diff, "test first differences");

    // lagselect
    auto* lagselect = app.add_subcommand("lagselect", "VAR lag order selection");
    add_data_options(lagselect, data);
    lagselect->add_option("--vars", vars, "variables, comma separated; default dependent + regressors");
    int pmax = 2;
    lagselect->add_option("--pmax", pmax, "largest lag order");
    lagselect->add_option("--format", format, "text or json");

    // johansen
    auto* johansen = app.add_subcommand("johansen", "Johansen trace and max-eigenvalue rank tests");
    add_data_options(johansen, data);
    johansen->add_option("--vars", vars, "variables, comma separated");
    int diff_lags = 1;
    int det_case = 3;
    johansen->add_option("--diff-lags", diff_lags, "lagged differences in the VECM");
    johansen->add_option("--case", det_case, "deterministic case 1-4 (embedded critical values for 3 only)");
    johansen->add_option("--level", level, "significance level");

    // dols
    auto* dols = app.add_subcommand("dols", "dynamic OLS long-run estimates");
    add_data_options(dols, data);
    std::string dependent;
    dols->add_option("--dependent", dependent, "dependent variable (default from config)");
    dols->add_option("--vars", vars, "regressors, comma separated (default from config)");
    int leads = 1, lags = 1, bandwidth = -1, select_max = -1;
    dols->add_option("--leads", leads, "leads of the differenced regressors");
    dols->add_option("--lags", lags, "lags of the differenced regressors");
    dols->add_option("--bandwidth", bandwidth, "HAC bandwidth (default: automatic)");
    dols->add_option("--select", select_max, "choose a symmetric order up to this value by SC");
    dols->add_option("--level", level, "significance level for stars");

    // diagnose
    auto* diagnose = app.add_subcommand("diagnose", "residual diagnostics of a levels or DOLS equation");
    add_data_options(diagnose, data);
    diagnose->add_option("--dependent", dependent, "dependent variable");
    diagnose->add_option("--vars", vars, "regressors, comma separated");
    bool on_dols = false;
    int bg_order = 2;
    std::string het = "breusch-pagan";
    diagnose->add_flag("--dols", on_dols, "diagnose the DOLS(1,1) equation instead of the static one");
    diagnose->add_option("--bg-order", bg_order, "serial correlation order");
    diagnose->add_option("--het", het, "breusch-pagan or white-no-cross");
    diagnose->add_option("--level", level, "level of the CUSUM bands");

    // mc-cv
    auto* mccv = app.add_subcommand("mc-cv", "Monte Carlo critical values");
    std::string target = "df:c";
    McConfig mc;
    std::string mc_format = "csv";
    mccv->add_option("--target", target, "df:<nc|c|ct>, za:<A|B|C>[:trim], trace:<k>[:case], maxeig:<k>[:case]");
    mccv->add_option("--T", mc.T, "sample size");
    mccv->add_option("--reps", mc.reps, "replications");
    mccv->add_option("--seed", mc.seed, "64-bit seed");
    mccv->add_option("--workers", mc.workers, "threads (0: all cores); never changes the output");
    mccv->add_option("--level", level, "print only this level");
    mccv->add_option("--format", mc_format, "csv or json");
    bool level_given = false;
    auto* validate_cmd = mccv->add_subcommand("validate_tables", "check every embedded critical value by simulation");
    ValidationBudget budget;
    validate_cmd->add_option("--T", budget.T, "sample size");
    validate_cmd->add_option("--reps", budget.reps, "replications");
    validate_cmd->add_option("--seed", budget.seed, "seed");
    validate_cmd->add_option("--workers", budget.workers, "threads");
    validate_cmd->add_option("--max-trends", budget.max_trends, "Johansen rows n-r = 1..max");
    validate_cmd->add_option("--format", mc_format, "csv or json");

    // figure
    auto* figure = app.add_subcommand("figure", "plot-ready CSV of the raw EXP, EXC and INF series");
    add_data_options(figure, data);
    figure->add_option("--series", series, "columns to emit, comma separated");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    level_given = mccv->count("--level") > 0;

    try {
        const Level lvl = level_from_string(level);

        if (*pipeline) {
            auto l = load_data(data);
            const auto fmt = report_format_from_string(pipeline_format.empty() ? l.config.format : pipeline_format);
            const auto report = run_pipeline(l.ingest.dataset, l.config, l.provenance);
            const auto text = emit(report, fmt);
            if (output.empty()) {
                std::cout << text;
            } else {
                std::ofstream out(output, std::ios::binary);
                if (!out) throw ConfigError("cannot write '" + output + "'");
                out << text;
            }
            return 0;
        }

        if (*describe_cmd) {
            auto l = load_data(data);
            const auto rows = cointegra::describe(chosen(l, data));
            if (format == "json") {
                json j = json::array();
                for (const auto& s : rows) {
                    j.push_back({{"variable", s.name}, {"n", s.n}, {"mean", s.mean}, {"sd", s.sd}, {"min", s.min},
                                 {"max", s.max}});
                }
                print(j);
            } else {
                std::printf("%-10s %5s %10s %10s %10s %10s\n", "Variable", "Obs.", "Mean", "SD", "Min.", "Max.");
                for (const auto& s : rows) {
                    std::printf("%-10s %5zu %10.3f %10.3f %10.3f %10.3f\n", s.name.c_str(), s.n, s.mean, s.sd, s.min,
                                s.max);
                }
            }
            return 0;
        }

        if (*unitroot || *za) {
            auto l = load_data(data);
            const auto& d = chosen(l, data);
            const auto names = series.empty() ? d.names() : split_list(series);
            json out = json::array();
            for (const auto& n : names) {
                const TimeSeries s = (*unitroot ? ur_diff : za_diff) ? difference(d.at(n)) : d.at(n);
                if (*unitroot) {
                    const auto det = deterministic_from_string(spec);
                    const auto lp = ur_lags >= 0 ? LagPolicy::fixed(ur_lags) : LagPolicy::select(ur_max_lags);
                    const auto bp = ur_bandwidth >= 0 ? BandwidthPolicy::fixed(ur_bandwidth)
                                                      : BandwidthPolicy::automatic_rule();
                    for (const auto& r : {adf_test(s, det, lp), pp_test(s, det, bp)}) {
                        out.push_back({{"series", n}, {"test", r.test}, {"spec", to_string(r.spec)},
                                       {"statistic", r.statistic}, {"order", r.lags_or_bandwidth},
                                       {"n_obs", r.n_obs}, {"critical_values", levels_json(r.critical_values)},
                                       {"rejects", r.rejects(lvl)}, {"stars", stars(r.stars())}});
                    }
                } else {
                    const auto r = za_test(s, za_model_from_string(model), trim);
                    out.push_back({{"series", n}, {"model", to_string(r.model)}, {"statistic", r.min_statistic},
                                   {"break_year", r.break_year}, {"lags", r.lags},
                                   {"critical_values", levels_json(r.critical_values)}, {"rejects", r.rejects(lvl)},
                                   {"stars", stars(r.stars())}});
                }
            }
            print(out);
            return 0;
        }

        if (*lagselect) {
            auto l = load_data(data);
            const auto names = vars.empty() ? l.config.roles() : split_list(vars);
            const auto t = lag_selection_table(chosen(l, data).select(names), pmax);
            json rows = json::array();
            for (const auto& r : t.rows) {
                rows.push_back({{"lag", r.lag}, {"loglik", r.loglik}, {"lr", r.lr ? json(*r.lr) : json(nullptr)},
                                {"fpe", r.fpe}, {"aic", r.aic}, {"sc", r.sc}, {"hq", r.hq}});
            }
            json j = {{"n_obs", t.n_obs}, {"rows", rows},
                      {"selected", {{"lr", t.lr_lag}, {"fpe", t.fpe_lag}, {"aic", t.aic_lag}, {"sc", t.sc_lag},
                                    {"hq", t.hq_lag}}}};
            if (format == "json") {
                print(j);
            } else {
                std::printf("%4s %10s %10s %12s %10s %10s %10s\n", "Lag", "LogL", "LR", "FPE", "AIC", "SC", "HQ");
                for (const auto& r : t.rows) {
                    auto m = [](int sel, int lag) { return sel == lag ? "*" : " "; };
                    std::printf("%4d %10.3f %9s%s %11.3e%s %9.3f%s %9.3f%s %9.3f%s\n", r.lag, r.loglik,
                                r.lr ? fmt3(*r.lr).c_str() : "NA", m(t.lr_lag, r.lag), r.fpe, m(t.fpe_lag, r.lag),
                                r.aic, m(t.aic_lag, r.lag), r.sc, m(t.sc_lag, r.lag), r.hq, m(t.hq_lag, r.lag));
                }
            }
            return 0;
        }

        if (*johansen) {
            auto l = load_data(data);
            const auto names = vars.empty() ? l.config.roles() : split_list(vars);
            VecmSpec vs;
            vs.diff_lags = diff_lags;
            vs.det_case = johansen_case_from_int(det_case);
            const auto e = johansen_eigen(chosen(l, data).select(names), vs);
            const auto rt = rank_test(e, 0, lvl);
            json rows = json::array();
            for (const auto& r : rt.rows) {
                rows.push_back({{"r", r.r}, {"eigenvalue", r.eigenvalue}, {"trace", r.trace}, {"trace_cv", r.trace_cv},
                                {"trace", r.trace}, {"maxeig", r.maxeig}, {"maxeig_cv", r.maxeig_cv},
                                {"trace_stars", stars(r.trace_stars)}, {"maxeig_stars", stars(r.maxeig_stars)}});
            }
            print({{"n_obs", rt.n_obs}, {"level", to_string(lvl)}, {"decided_rank", rt.decided_rank},
                   {"maxeig_decided_rank", rt.maxeig_decided_rank}, {"rows", rows}});
            return 0;
        }

        if (*dols || *diagnose) {
            auto l = load_data(data);
            const auto& d = chosen(l, data);
            const std::string dep = dependent.empty() ? l.config.dependent : dependent;
            const auto regs = vars.empty() ? l.config.regressors : split_list(vars);
            if (*dols) {
                DolsSpec ds;
                if (select_max >= 0) {
                    ds = select_leads_lags(d, dep, regs, select_max);
                } else {
                    ds.leads = leads;
                    ds.lags = lags;
                }
                ds.hac = bandwidth >= 0 ? BandwidthPolicy::fixed(bandwidth) : BandwidthPolicy::automatic_rule();
                const auto fit = dols_fit(d, dep, regs, ds);
                json rows = json::array();
                for (Eigen::Index j = 0; j < fit.longrun_coefficients.size(); ++j) {
                    rows.push_back({{"variable", fit.longrun_names[static_cast<std::size_t>(j)]},
                                    {"coefficient", fit.longrun_coefficients(j)},
                                    {"std_error", fit.hac_standard_errors(j)}, {"t_ratio", fit.t_ratios(j)},
                                    {"p_value", fit.p_values(j)}, {"stars", stars(stars_from_p(fit.p_values(j)))}});
                }
                print({{"dependent", dep}, {"leads", fit.spec.leads}, {"lags", fit.spec.lags},
                       {"bandwidth", fit.bandwidth}, {"n_obs", fit.n_obs}, {"coefficients", rows}});
            } else {
                Eigen::VectorXd y;
                Eigen::MatrixXd X;
                if (on_dols) {
                    const auto fit = dols_fit(d, dep, regs);
                    y = fit.y;
                    X = fit.design;
                } else {
                    const auto T = static_cast<Eigen::Index>(d.num_obs());
                    y.resize(T);
                    X.resize(T, 1 + static_cast<Eigen::Index>(regs.size()));
                    X.col(0).setOnes();
                    for (Eigen::Index t = 0; t < T; ++t) {
                        y(t) = d.at(dep)[static_cast<std::size_t>(t)];
                        for (std::size_t j = 0; j < regs.size(); ++j) {
                            X(t, static_cast<Eigen::Index>(j) + 1) = d.at(regs[j])[static_cast<std::size_t>(t)];
                        }
                    }
                }
                DiagnosticsOptions opt;
                opt.bg_order = bg_order;
                opt.het = het_kind_from_string(het);
                opt.level = lvl;
                const auto rep = run_diagnostics(y, X, opt);
                json entries = json::array();
                for (const auto& e : rep.entries) {
                    entries.push_back({{"test", e.test_name}, {"statistic", e.statistic}, {"dof", e.dof},
                                       {"p_value", e.p_value}});
                }
                print({{"equation", on_dols ? "DOLS(1,1)" : "static levels"}, {"entries", entries},
                       {"cusum", rep.cusum.verdict()}, {"cusumsq", rep.cusumsq.verdict()}});
            }
            return 0;
        }

        if (*mccv) {
            if (*validate_cmd) {
                const auto rep = validate_tables(budget);
                if (mc_format == "json") {
                    json rows = json::array();
                    for (const auto& e : rep.entries) {
                        rows.push_back({{"table", e.table}, {"key", e.key}, {"level", to_string(e.level)},
                                        {"embedded", e.embedded}, {"simulated", e.simulated}, {"mc_se", e.mc_se},
                                        {"allowance", e.allowance}, {"passed", e.passed}});
                    }
                    print({{"T", rep.T}, {"reps", rep.reps}, {"seed", rep.seed}, {"all_passed", rep.all_passed()},
                           {"entries", rows}});
                } else {
                    std::cout << "table,key,level,embedded,simulated,mc_se,allowance,passed\n";
                    for (const auto& e : rep.entries) {
                        std::printf("%s,%s,%s,%.4f,%.4f,%.4f,%.2f,%s\n", e.table.c_str(), e.key.c_str(),
                                    to_string(e.level).c_str(), e.embedded, e.simulated, e.mc_se, e.allowance,
                                    e.passed ? "pass" : "FAIL");
                    }
                }
                return rep.all_passed() ? 0 : 4;
            }
            mc.target = McTarget::parse(target);
            const auto q = simulate_quantiles(mc);
            if (mc_format == "json") {
                json rows = json::array();
                for (const auto& r : q.rows) {
                    if (level_given && r.level != lvl) continue;
                    rows.push_back({{"level", to_string(r.level)}, {"probability", r.probability},
                                    {"quantile", r.quantile}, {"mc_se", r.mc_se}});
                }
                print({{"target", q.target.label()}, {"T", q.T}, {"reps", q.reps}, {"seed", q.seed}, {"rows", rows}});
            } else if (mc_format == "csv") {
                std::cout << "target,T,reps,seed,level,probability,quantile,mc_se\n";
                for (const auto& r : q.rows) {
                    if (level_given && r.level != lvl) continue;
                    std::printf("%s,%d,%d,%llu,%s,%.2f,%.17g,%.17g\n", q.target.label().c_str(), q.T, q.reps,
                                static_cast<unsigned long long>(q.seed), to_string(r.level).c_str(), r.probability,
                                r.quantile, r.mc_se);
                }
            } else {
                throw ConfigError("mc-cv --format must be csv or json");
            }
            return 0;
        }

        if (*figure) {
            auto l = load_data(data);
            const auto names = series.empty() ? std::vector<std::string>{"EXP", "EXC", "INF"} : split_list(series);
            const auto& raw = l.ingest.raw;
            std::cout << "year";
            for (const auto& n : names) std::cout << ',' << n;
            std::cout << '\n';
            for (std::size_t t = 0; t < raw.num_obs(); ++t) {
                std::cout << raw.start_year() + static_cast<int>(t);
                for (const auto& n : names) std::cout << ',' << raw.at(n)[t];
                std::cout << '\n';
            }
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
