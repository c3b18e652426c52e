// Thin pybind11 layer: plain Python/NumPy in, dicts out.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <fstream>
#include <optional>
#include <sstream>

#include "cointegra/config.hpp"
#include "cointegra/diagnostics.hpp"
#include "cointegra/dols.hpp"
#include "cointegra/errors.hpp"
#include "cointegra/ingest.hpp"
#include "cointegra/johansen.hpp"
#include "cointegra/linreg.hpp"
#include "cointegra/mccv.hpp"
#include "cointegra/pipeline.hpp"
#include "cointegra/report.hpp"
#include "cointegra/unitroot.hpp"
#include "cointegra/varselect.hpp"
#include "cointegra/zabreak.hpp"

namespace py = pybind11;
using namespace cointegra;

namespace {

py::dict levels(const std::map<Level, double>& cvs) {
    py::dict d;
    for (const auto& [l, v] : cvs) d[py::str(to_string(l))] = v;
    return d;
}

py::dict unit_root_dict(const UnitRootResult& r) {
    py::dict d;
    d["test"] = r.test;
    d["statistic"] = r.statistic;
    d["spec"] = to_string(r.spec);
    d["order"] = r.lags_or_bandwidth;
    d["n_obs"] = r.n_obs;
    d["critical_values"] = levels(r.critical_values);
    d["stars"] = r.stars();
    return d;
}

CovarianceKind covariance(const std::string& kind, int bandwidth) {
    if (kind == "classical") return CovarianceKind::classical();
    if (kind == "hc0") return CovarianceKind::white_hc0();
    if (kind == "newey-west") return CovarianceKind::newey_west(bandwidth);
    throw ConfigError("covariance must be classical, hc0 or newey-west");
}

BandwidthPolicy bandwidth_policy(std::optional<int> bw) {
    return bw ? BandwidthPolicy::fixed(*bw) : BandwidthPolicy::automatic_rule();
}

py::dict diagnostic_dict(const DiagnosticEntry& e) {
    py::dict d;
    d["test"] = e.test_name;
    d["statistic"] = e.statistic;
    d["dof"] = e.dof;
    d["p_value"] = e.p_value;
    return d;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Unit roots, cointegration and long-run estimation for annual macro series";
    m.attr("__version__") = COINTEGRA_VERSION;

    static py::exception<Error> base(m, "Error", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
    py::register_exception<DataError>(m, "DataError", base.ptr());
    py::register_exception<NumericalError>(m, "NumericalError", base.ptr());

    m.def(
        "ols",
        [](const Eigen::VectorXd& y, const Eigen::MatrixXd& X, const std::string& cov, int bandwidth) {
            const auto fit = ols_fit(y, X, covariance(cov, bandwidth));
            py::dict d;
            d["coefficients"] = fit.coefficients;
            d["standard_errors"] = Eigen::VectorXd(fit.standard_errors());
            d["t"] = Eigen::VectorXd(fit.t_ratios());
            d["residuals"] = fit.residuals;
            d["rss"] = fit.rss;
            d["loglik"] = fit.loglik;
            d["n_obs"] = fit.n_obs;
            return d;
        },
        py::arg("y"), py::arg("X"), py::arg("cov") = "classical", py::arg("bandwidth") = 0);

    m.def("newey_west_variance", &newey_west_longrun_variance, py::arg("u"), py::arg("bandwidth"));

    m.def(
        "adf",
        [](const std::vector<double>& y, const std::string& spec, std::optional<int> lags, int max_lags) {
            const auto policy = lags ? LagPolicy::fixed(*lags) : LagPolicy::select(max_lags);
            return unit_root_dict(adf_test(y, deterministic_from_string(spec), policy));
        },
        py::arg("y"), py::arg("spec") = "constant", py::arg("lags") = py::none(), py::arg("max_lags") = -1);

    m.def(
        "pp",
        [](const std::vector<double>& y, const std::string& spec, std::optional<int> bandwidth) {
            return unit_root_dict(pp_test(y, deterministic_from_string(spec), bandwidth_policy(bandwidth)));
        },
        py::arg("y"), py::arg("spec") = "constant", py::arg("bandwidth") = py::none());

    m.def(
        "za",
        [](const std::vector<double>& y, const std::string& model, double trimming, int start_year) {
            const auto r = za_test(y, start_year, za_model_from_string(model), trimming);
            py::dict d;
            d["statistic"] = r.min_statistic;
            d["break_year"] = r.break_year;
            d["lags"] = r.lags;
            d["critical_values"] = levels(r.critical_values);
            d["stars"] = r.stars();
            return d;
        },
        py::arg("y"), py::arg("model") = "A", py::arg("trimming") = 0.15, py::arg("start_year") = 0);

    m.def(
        "lag_selection",
        [](const Eigen::MatrixXd& levels_, int pmax) {
            const auto t = lag_selection_table(levels_, pmax);
            py::list rows;
            for (const auto& r : t.rows) {
                py::dict d;
                d["lag"] = r.lag;
                d["loglik"] = r.loglik;
                d["lr"] = r.lr ? py::cast(*r.lr) : py::none();
                d["fpe"] = r.fpe;
                d["aic"] = r.aic;
                d["sc"] = r.sc;
                d["hq"] = r.hq;
                rows.append(d);
            }
            py::dict out;
            out["rows"] = rows;
            out["n_obs"] = t.n_obs;
            out["selected"] = py::dict(py::arg("lr") = t.lr_lag, py::arg("fpe") = t.fpe_lag, py::arg("aic") = t.aic_lag,
                                       py::arg("sc") = t.sc_lag, py::arg("hq") = t.hq_lag);
            return out;
        },
        py::arg("levels"), py::arg("pmax"));

    m.def(
        "johansen",
        [](const Eigen::MatrixXd& levels_, int diff_lags, int det_case, const std::string& level) {
            const auto e = johansen_eigen(levels_, VecmSpec{diff_lags, johansen_case_from_int(det_case)});
            const auto r = rank_test(e, 0, level_from_string(level));
            py::list rows;
            for (const auto& row : r.rows) {
                py::dict d;
                d["r"] = row.r;
                d["eigenvalue"] = row.eigenvalue;
                d["trace"] = row.trace;
                d["trace_cv"] = row.trace_cv;
                d["maxeig"] = row.maxeig;
                d["maxeig_cv"] = row.maxeig_cv;
                rows.append(d);
            }
            py::dict out;
            out["eigenvalues"] = e.eigenvalues;
            out["rows"] = rows;
            out["n_obs"] = r.n_obs;
            out["trace_rank"] = r.decided_rank;
            out["maxeig_rank"] = r.maxeig_decided_rank;
            return out;
        },
        py::arg("levels"), py::arg("diff_lags") = 1, py::arg("det_case") = 3, py::arg("level") = "5%");

    m.def(
        "dols",
        [](const std::vector<double>& y, const Eigen::MatrixXd& x, std::vector<std::string> names, int leads, int lags,
           std::optional<int> bandwidth) {
            if (names.empty()) {
                for (Eigen::Index j = 0; j < x.cols(); ++j) names.push_back("x" + std::to_string(j + 1));
            }
            const auto f = dols_fit(y, x, names, DolsSpec{leads, lags, bandwidth_policy(bandwidth)});
            py::dict d;
            d["names"] = f.longrun_names;
            d["coefficients"] = f.longrun_coefficients;
            d["standard_errors"] = f.hac_standard_errors;
            d["t"] = f.t_ratios;
            d["p_values"] = f.p_values;
            d["bandwidth"] = f.bandwidth;
            d["n_obs"] = f.n_obs;
            return d;
        },
        py::arg("y"), py::arg("x"), py::arg("names") = std::vector<std::string>{}, py::arg("leads") = 1,
        py::arg("lags") = 1, py::arg("bandwidth") = py::none());

    m.def(
        "diagnostics",
        [](const Eigen::VectorXd& y, const Eigen::MatrixXd& X, int bg_order, const std::string& het) {
            DiagnosticsOptions opt;
            opt.bg_order = bg_order;
            opt.het = het_kind_from_string(het);
            const auto rep = run_diagnostics(y, X, opt);
            py::list entries;
            for (const auto& e : rep.entries) entries.append(diagnostic_dict(e));
            py::dict d;
            d["entries"] = entries;
            d["cusum"] = rep.cusum.statistic;
            d["cusumsq"] = rep.cusumsq.statistic;
            return d;
        },
        py::arg("y"), py::arg("X"), py::arg("bg_order") = 2, py::arg("het") = "breusch-pagan");

    m.def(
        "simulate_quantiles",
        [](const std::string& target, int T, int reps, std::uint64_t seed, int workers) {
            McConfig cfg;
            cfg.target = McTarget::parse(target);
            cfg.T = T;
            cfg.reps = reps;
            cfg.seed = seed;
            cfg.workers = workers;
            py::dict d;
            for (const auto& row : simulate_quantiles(cfg).rows) {
                d[py::str(to_string(row.level))] = py::make_tuple(row.quantile, row.mc_se);
            }
            return d;
        },
        py::arg("target"), py::arg("T") = 500, py::arg("reps") = 5000, py::arg("seed") = 20240917,
        py::arg("workers") = 0);

    m.def(
        "run_pipeline_json",
        [](const std::vector<std::filesystem::path>& files, const std::string& config_json) {
            const PipelineConfig config =
                config_json.empty() ? PipelineConfig{} : config_from_json(nlohmann::json::parse(config_json));
            validate(config);
            std::vector<RawRecord> records;
            std::vector<Provenance> provenance;
            for (const auto& f : files) {
                auto recs = read_csv_file(f);
                provenance.push_back({f.filename().string(), recs.empty() ? "empty" : to_string(recs.front().source),
                                      sha256_hex(slurp(f))});
                records.insert(records.end(), recs.begin(), recs.end());
            }
            const auto data = ingest(records, config);
            py::gil_scoped_release release;
            return emit(run_pipeline(data.dataset, config, provenance), ReportFormat::Json);
        },
        py::arg("files"), py::arg("config_json") = "");
}
