#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "compnoma/config.hpp"
#include "compnoma/grouping.hpp"
#include "compnoma/link.hpp"
#include "compnoma/radio.hpp"
#include "compnoma/scheduler.hpp"
#include "compnoma/sim.hpp"

namespace py = pybind11;
using namespace compnoma;

namespace {

MetricsReport sweep(const std::string& config_text, const std::vector<std::string>& overrides, std::size_t threads) {
    const ScenarioConfig cfg = parse_config_text(config_text, overrides);
    py::gil_scoped_release release;
    return run_sweep(cfg, {threads});
}

py::list rows_of(const MetricsReport& report) {
    py::list out;
    for (const auto& r : report.rows) {
        py::dict d;
        d["scheme"] = std::string(scheme_name(r.scheme));
        d["lambda_b"] = r.point.lambda_b;
        d["lambda_u"] = r.point.lambda_u;
        d["gamma_th_db"] = r.point.gamma_th_db;
        d["mean_tput_bps"] = r.mean_tput_bps;
        d["tput_ci95_bps"] = r.tput_ci95_bps;
        d["coverage"] = r.coverage;
        d["coverage_ci95"] = r.coverage_ci95;
        d["mean_theta"] = r.mean_theta;
        d["iterations"] = r.iterations;
        d["seed"] = r.seed;
        out.append(std::move(d));
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "CoMP/NOMA downlink Monte Carlo simulator";
    m.attr("__version__") = COMPNOMA_VERSION;

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<TopologyError>(m, "TopologyError", PyExc_RuntimeError);

    m.def(
        "path_loss",
        [](double d_km, double intercept_db, double slope_db, double min_distance_km) {
            LinkBudget b;
            b.pl_intercept_db = intercept_db;
            b.pl_slope_db = slope_db;
            b.min_distance_km = min_distance_km;
            return path_loss(d_km, b);
        },
        py::arg("distance_km"), py::arg("intercept_db") = 133.6, py::arg("slope_db") = 35.0,
        py::arg("min_distance_km") = 0.010, "Path loss in dB at a distance in km.");
    m.def(
        "channel_gain", [](double d_km, double shadowing_db) { return channel_gain(d_km, LinkBudget{}, shadowing_db); },
        py::arg("distance_km"), py::arg("shadowing_db") = 0.0, "Linear gain with the default link budget.");

    m.def(
        "solve_power_fraction",
        [](double gs, double gw, double share) {
            PairingOptions o;
            o.oma_time_share = share;
            return solve_power_fraction(gs, gw, o);
        },
        py::arg("gamma_strong"), py::arg("gamma_weak"), py::arg("oma_time_share") = 0.5,
        "Strong-user power share of a NOMA pair, or None when the pair is not admissible.");
    m.def("beta_fraction", &beta_fraction, py::arg("num_pairs"), py::arg("num_oma"));
    m.def(
        "theta_split",
        [](std::size_t comp, const std::vector<std::size_t>& per_bs) { return theta_split(comp, per_bs); },
        py::arg("comp_entities"), py::arg("noncomp_entities_per_bs"));

    m.def(
        "mcs_efficiency", [](double sinr) { return McsTable::default_table().efficiency(sinr); },
        py::arg("sinr_linear"), "Spectral efficiency (bit/symbol) from the default MCS table.");
    m.def(
        "link_rate",
        [](double sinr, std::size_t subchannels) {
            FrameParams f;
            f.subchannels = subchannels;
            return link_rate(sinr, f, McsTable::default_table());
        },
        py::arg("sinr_linear"), py::arg("subchannels") = 100, "Link rate in bit/s.");

    m.def(
        "default_config", []() { return serialize_config(ScenarioConfig{}); },
        "Every configuration key with its default value, as scenario-file text.");
    m.def(
        "preset_config",
        [](const std::string& name) {
            if (name == "figure3") return serialize_config(figure3_preset());
            if (name == "figure4") return serialize_config(figure4_preset());
            if (name == "figure5") return serialize_config(figure5_preset());
            throw ConfigError("unknown preset '" + name + "'");
        },
        py::arg("name"));
    m.def(
        "resolve_config",
        [](const std::string& text, const std::vector<std::string>& overrides) {
            return serialize_config(parse_config_text(text, overrides));
        },
        py::arg("text") = "", py::arg("overrides") = std::vector<std::string>{},
        "Parse, validate and re-serialize a scenario.");

    m.def(
        "run_sweep",
        [](const std::string& text, const std::vector<std::string>& overrides, std::size_t threads) {
            return rows_of(sweep(text, overrides, threads));
        },
        py::arg("config") = "", py::arg("overrides") = std::vector<std::string>{}, py::arg("threads") = 1,
        "Run a sweep and return one dict per scheme and point.");
    m.def(
        "sweep_csv",
        [](const std::string& text, const std::vector<std::string>& overrides, std::size_t threads) {
            const auto report = sweep(text, overrides, threads);
            std::ostringstream out;
            write_csv(out, report);
            return out.str();
        },
        py::arg("config") = "", py::arg("overrides") = std::vector<std::string>{}, py::arg("threads") = 1,
        "Run a sweep and return the CSV text the command-line tool would write.");

    py::list cols;
    for (auto c : kCsvColumns) cols.append(std::string(c));
    m.attr("CSV_COLUMNS") = cols;
    py::list schemes;
    for (auto s : kAllSchemes) schemes.append(std::string(scheme_name(s)));
    m.attr("SCHEMES") = schemes;
}
