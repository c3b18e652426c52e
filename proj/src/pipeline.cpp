#include "cointegra/pipeline.hpp"

#include <cstdio>
#include <functional>

#include "cointegra/critical_values.hpp"
#include "cointegra/diagnostics.hpp"
#include "cointegra/dols.hpp"
#include "cointegra/errors.hpp"
#include "cointegra/johansen.hpp"
#include "cointegra/mccv.hpp"
#include "cointegra/unitroot.hpp"
#include "cointegra/varselect.hpp"
#include "cointegra/zabreak.hpp"

namespace cointegra {

using nlohmann::json;

namespace {

template <class F>
auto stage(const std::string& name, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const Error& e) {
        throw e.with_context(name);
    }
}

UnitRootCell cell(const UnitRootResult& r) { return {r.statistic, r.lags_or_bandwidth, r.stars()}; }

ZaCell cell(const ZaResult& r) { return {r.break_year, r.min_statistic, r.lags, r.stars()}; }

void add_diagnostics(const DiagnosticsReport& d, std::vector<DiagnosticRow>& rows, std::vector<StabilityRow>& stab) {
    for (const auto& e : d.entries) rows.push_back({e.test_name, e.statistic, e.dof, e.p_value});
    stab.push_back({"CUSUM", d.cusum.verdict(), static_cast<int>(d.cusum.statistic.size()), d.cusum.exits()});
    stab.push_back({"CUSUMSQ", d.cusumsq.verdict(), static_cast<int>(d.cusumsq.statistic.size()), d.cusumsq.exits()});
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
    std::string out;
    for (const auto& s : v) out += (out.empty() ? "" : sep) + s;
    return out;
}

}  // namespace

std::string dataset_hash(const Dataset& d) {
    std::string canon;
    char buf[64];
    for (const auto& s : d.series()) {
        canon += s.name() + "," + std::to_string(s.start_year()) + "\n";
        for (double v : s.values()) {
            std::snprintf(buf, sizeof buf, "%.17g\n", v);
            canon += buf;
        }
    }
    return sha256_hex(canon);
}

PaperReport run_pipeline(const Dataset& input, const PipelineConfig& config,
                         const std::vector<Provenance>& provenance) {
    stage("config", [&] { validate(config); });
    const auto roles = config.roles();
    const Dataset d = stage("config", [&] { return input.select(roles); });
    const int T = static_cast<int>(d.num_obs());
    if (d.start_year() != config.start_year || d.start_year() + T - 1 != config.end_year) {
        throw DataError("[config] dataset covers " + std::to_string(d.start_year()) + "-" +
                        std::to_string(d.start_year() + T - 1) + ", configuration expects " +
                        std::to_string(config.start_year) + "-" + std::to_string(config.end_year));
    }

    PaperReport rep;
    json& meta = rep.meta;
    meta["tool"] = "cointegra";
    meta["version"] = COINTEGRA_VERSION;
    meta["config"] = to_json(config);
    meta["data"] = {{"sha256", dataset_hash(d)}, {"n_obs", T}, {"start_year", d.start_year()},
                    {"end_year", d.start_year() + T - 1}, {"variables", roles},
                    {"transform", config.log10 ? "log10" : "none"}};
    json prov = json::array();
    for (const auto& p : provenance) prov.push_back({{"file", p.file}, {"source", p.source}, {"sha256", p.sha256}});
    meta["provenance"] = prov;
    meta["skipped"] = json::object();
    for (int t = 1; t <= 6; ++t) {
        if (!config.table_enabled(t)) meta["skipped"]["table" + std::to_string(t)] = "disabled in configuration";
    }
    json decisions;

    // Descriptive statistics
    stage("describe", [&] {
        for (const auto& s : describe(d)) {
            const auto& v = config.variable(s.name);
            rep.table1.push_back({s.name, v.description, v.source, static_cast<int>(s.n), s.mean, s.sd, s.min, s.max});
        }
    });

    // Unit roots
    const LagPolicy adf_policy = LagPolicy::select(config.adf_max_lags, config.adf_criterion);
    const BandwidthPolicy pp_policy = config.pp_bandwidth < 0 ? BandwidthPolicy::automatic_rule()
                                                              : BandwidthPolicy::fixed(config.pp_bandwidth);
    std::vector<std::string> caveats;
    stage("unitroot", [&] {
        const Deterministic caveat_spec = config.unit_root_specs.front();
        for (Deterministic spec : config.unit_root_specs) {
            for (const auto& s : d.series()) {
                const auto ds = difference(s);
                UnitRootRow row;
                row.variable = s.name();
                row.spec = to_string(spec);
                const auto al = adf_test(s, spec, adf_policy);
                const auto ad = adf_test(ds, spec, adf_policy);
                row.adf_level = cell(al);
                row.adf_diff = cell(ad);
                row.pp_level = cell(pp_test(s, spec, pp_policy));
                row.pp_diff = cell(pp_test(ds, spec, pp_policy));
                row.integrated_order_one = !al.rejects(config.level) && ad.rejects(config.level);
                if (spec == caveat_spec && !row.integrated_order_one) {
                    caveats.push_back(s.name() + " is not classified I(1) at " + to_string(config.level) +
                                      " by ADF (" + to_string(spec) + "): level " + fmt3(al.statistic) +
                                      ", first difference " + fmt3(ad.statistic) +
                                      "; cointegration results for it rest on that assumption");
                }
                rep.table2.push_back(row);
            }
        }
    });
    meta["caveats"] = caveats;
    decisions["adf_lag_selection"] = "augmentation order by " + to_string(config.adf_criterion) +
                                     (config.adf_max_lags < 0 ? ", max floor(12 (T/100)^(1/4)) trimmed to the sample"
                                                              : ", max " + std::to_string(config.adf_max_lags));
    decisions["pp_bandwidth"] = config.pp_bandwidth < 0 ? "Bartlett kernel, floor(4 (T/100)^(2/9))"
                                                        : "Bartlett kernel, fixed " + std::to_string(config.pp_bandwidth);
    decisions["i1_classification"] = "ADF with " + to_string(config.unit_root_specs.front()) +
                                     ": level not rejected and first difference rejected at " +
                                     to_string(config.level);

    // Structural breaks
    stage("za", [&] {
        const LagPolicy za_policy = LagPolicy::select(config.za_max_lags, Criterion::SC);
        json cvs = json::object();
        for (ZaModel m : config.za_models) {
            cvs[to_string(m)] = {{"1%", za_critical_value(m, Level::P1)},
                                 {"5%", za_critical_value(m, Level::P5)},
                                 {"10%", za_critical_value(m, Level::P10)}};
            for (const auto& s : d.series()) {
                const auto ds = difference(s);
                rep.table3.push_back({s.name(), to_string(m), cell(za_test(s, m, config.za_trimming, za_policy)),
                                      cell(za_test(ds, m, config.za_trimming, za_policy))});
            }
        }
        meta["za_critical_values"] = cvs;
    });
    decisions["za"] = "trimming " + fmt3(config.za_trimming) + ", per-candidate lag order by SC; break year is the "
                      "first year with the shift dummy on";

    // VAR lag order
    const auto lags = stage("lagselect", [&] { return lag_selection_table(d, config.pmax); });
    for (const auto& r : lags.rows) {
        LagRow row;
        row.lag = r.lag;
        row.loglik = r.loglik;
        row.lr = r.lr;
        row.fpe = r.fpe;
        row.aic = r.aic;
        row.sc = r.sc;
        row.hq = r.hq;
        row.lr_selected = r.lag == lags.lr_lag && r.lr.has_value();
        row.fpe_selected = r.lag == lags.fpe_lag;
        row.aic_selected = r.lag == lags.aic_lag;
        row.sc_selected = r.lag == lags.sc_lag;
        row.hq_selected = r.lag == lags.hq_lag;
        rep.table4.push_back(row);
    }
    const int var_order = config.vecm_lag_criterion == Criterion::AIC  ? lags.aic_lag
                          : config.vecm_lag_criterion == Criterion::SC ? lags.sc_lag
                                                                       : lags.hq_lag;
    meta["lag_selection"] = {{"n_obs", lags.n_obs}, {"pmax", config.pmax}, {"lr", lags.lr_lag},
                             {"fpe", lags.fpe_lag}, {"aic", lags.aic_lag}, {"sc", lags.sc_lag}, {"hq", lags.hq_lag}};
    decisions["lag_selection"] = "common sample t = pmax+1..T; criteria per observation; LR with small-sample "
                                 "correction (n - 1 - k p)/n, tested downward at 5%";

    // Cointegration rank
    stage("johansen", [&] {
        VecmSpec spec;
        spec.diff_lags = config.johansen_diff_lags >= 0 ? config.johansen_diff_lags : std::max(var_order - 1, 0);
        spec.det_case = config.johansen_case;
        const auto e = johansen_eigen(d, spec);
        RankTestResult rt;
        std::string cv_source;
        if (spec.det_case == JohansenCase::UnrestrictedConstant) {
            rt = rank_test(e, 0, config.level);
            cv_source = "embedded case-3 asymptotic table";
        } else {
            std::vector<JohansenCriticalValues> cvs;
            McConfig mc;
            mc.T = T;
            mc.reps = config.mc_reps;
            mc.seed = config.mc_seed;
            for (int r = 0; r < e.num_variables(); ++r) {
                const int trends = e.num_variables() - r;
                mc.target = McTarget::johansen_trace(trends, spec.det_case);
                const double tr = simulate_quantiles(mc).at(config.level).quantile;
                mc.target = McTarget::johansen_maxeig(trends, spec.det_case);
                const double mx = simulate_quantiles(mc).at(config.level).quantile;
                cvs.push_back({tr, mx});
            }
            rt = rank_test(e, 0, config.level, cvs);
            cv_source = "simulated: T=" + std::to_string(T) + ", R=" + std::to_string(config.mc_reps) +
                        ", seed " + std::to_string(config.mc_seed) + " (no stars)";
        }
        for (const auto& row : rt.rows) {
            rep.table5_rank.push_back({row.r, row.eigenvalue, row.trace, row.trace_cv, row.maxeig, row.maxeig_cv,
                                       row.trace_stars, row.maxeig_stars});
        }
        meta["johansen"] = {{"case", static_cast<int>(spec.det_case)}, {"diff_lags", spec.diff_lags},
                            {"var_order", var_order}, {"n_obs", e.n_obs}, {"decided_rank", rt.decided_rank},
                            {"maxeig_decided_rank", rt.maxeig_decided_rank}, {"critical_values", cv_source}};
    });
    decisions["johansen"] = "VECM lagged differences = VAR order by " + to_string(config.vecm_lag_criterion) +
                            " minus one; " + to_string(config.johansen_case) +
                            "; decided rank is the first r whose trace null is not rejected";

    // Long-run estimates
    const auto fit = stage("dols", [&] {
        DolsSpec spec;
        if (config.dols_order == "select") {
            spec = select_leads_lags(d, config.dependent, config.regressors, config.dols_max_order);
        } else {
            spec.leads = config.dols_leads;
            spec.lags = config.dols_lags;
        }
        spec.hac = config.dols_bandwidth < 0 ? BandwidthPolicy::automatic_rule()
                                             : BandwidthPolicy::fixed(config.dols_bandwidth);
        return dols_fit(d, config.dependent, config.regressors, spec);
    });
    for (Eigen::Index j = 0; j < fit.longrun_coefficients.size(); ++j) {
        const double p = fit.p_values(j);
        rep.table6.push_back({fit.longrun_names[static_cast<std::size_t>(j)], fit.longrun_coefficients(j),
                              fit.hac_standard_errors(j), fit.t_ratios(j), p, stars_from_p(p)});
    }
    meta["dols"] = {{"leads", fit.spec.leads}, {"lags", fit.spec.lags}, {"bandwidth", fit.bandwidth},
                    {"n_obs", fit.n_obs}, {"first_year", fit.first_year},
                    {"n_params", static_cast<int>(fit.design.cols())}, {"longrun_variance", fit.longrun_variance}};
    decisions["dols"] = "leads and lags " + std::string(config.dols_order == "select" ? "chosen by SC" : "fixed") +
                        "; dx_t included; covariance lambda (X'X)^-1 n/(n-k) with Bartlett long-run variance of the "
                        "residuals; p-values from Student t with n-k dof";

    // Residual diagnostics
    stage("diagnostics", [&] {
        DiagnosticsOptions opt;
        opt.bg_order = config.bg_order;
        opt.het = config.het;
        opt.reset_powers = config.reset_powers;
        opt.level = config.level;

        const auto& y = d.at(config.dependent).values();
        Eigen::VectorXd yv = Eigen::Map<const Eigen::VectorXd>(y.data(), static_cast<Eigen::Index>(y.size()));
        Eigen::MatrixXd X(T, 1 + static_cast<Eigen::Index>(config.regressors.size()));
        X.col(0).setOnes();
        for (std::size_t j = 0; j < config.regressors.size(); ++j) {
            const auto v = d.at(config.regressors[j]).values();
            X.col(static_cast<Eigen::Index>(j) + 1) =
                Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
        }
        add_diagnostics(run_diagnostics(yv, X, opt), rep.table5_diagnostics, rep.table5_stability);
        add_diagnostics(run_diagnostics(fit.y, fit.design, opt), rep.table6_diagnostics, rep.table6_stability);
        meta["diagnostics"] = {
            {"table5", "static levels regression of " + config.dependent + " on C, " + join(config.regressors, ", ") +
                           " (" + std::to_string(T) + " obs.)"},
            {"table6", "DOLS(" + std::to_string(fit.spec.leads) + "," + std::to_string(fit.spec.lags) +
                           ") equation (" + std::to_string(fit.n_obs) + " obs.)"},
            {"serial_correlation", "Breusch-Godfrey LM, order " + std::to_string(config.bg_order) +
                                       ", zero-filled initial lags"},
            {"heteroskedasticity", to_string(config.het)},
            {"functional_form", "RESET with fitted-value powers, LM form n (R2a - R2b)/(1 - R2a)"},
            {"stability_level", to_string(config.level)}};
    });

    meta["design_decisions"] = decisions;

    if (!config.table_enabled(1)) rep.table1.clear();
    if (!config.table_enabled(2)) rep.table2.clear();
    if (!config.table_enabled(3)) rep.table3.clear();
    if (!config.table_enabled(4)) rep.table4.clear();
    if (!config.table_enabled(5)) {
        rep.table5_rank.clear();
        rep.table5_diagnostics.clear();
        rep.table5_stability.clear();
    }
    if (!config.table_enabled(6)) {
        rep.table6.clear();
        rep.table6_diagnostics.clear();
        rep.table6_stability.clear();
    }
    return rep;
}

}  // namespace cointegra
