#include "compnoma/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

namespace compnoma {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_list(std::string_view s) {
    std::vector<std::string_view> out;
    s = trim(s);
    if (s.empty()) return out;
    for (;;) {
        const auto comma = s.find(',');
        out.push_back(trim(s.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        s.remove_prefix(comma + 1);
    }
    return out;
}

double to_double(std::string_view key, std::string_view v) {
    v = trim(v);
    if (!v.empty() && v.front() == '+') v.remove_prefix(1);
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size())
        throw ConfigError(std::string(key) + ": '" + std::string(v) + "' is not a number", std::string(key));
    return out;
}

template <class Int>
Int to_integer(std::string_view key, std::string_view v) {
    v = trim(v);
    Int out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size())
        throw ConfigError(std::string(key) + ": '" + std::string(v) + "' is not a non-negative integer",
                          std::string(key));
    return out;
}

bool to_bool(std::string_view key, std::string_view v) {
    v = trim(v);
    if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "off" || v == "no") return false;
    throw ConfigError(std::string(key) + ": '" + std::string(v) + "' is not a boolean", std::string(key));
}

std::vector<double> to_doubles(std::string_view key, std::string_view v) {
    std::vector<double> out;
    for (auto item : split_list(v)) out.push_back(to_double(key, item));
    return out;
}

std::string join_doubles(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + format_double(v[i]);
    return s;
}

struct Setting {
    std::function<void(ScenarioConfig&, std::string_view key, std::string_view value)> set;
    std::function<std::string(const ScenarioConfig&)> get;
};

#define COMPNOMA_DOUBLE(field)                                                                       \
    Setting {                                                                                        \
        [](ScenarioConfig& c, std::string_view k, std::string_view v) { c.field = to_double(k, v); }, \
            [](const ScenarioConfig& c) { return format_double(c.field); }                           \
    }

const std::map<std::string, Setting, std::less<>>& registry() {
    static const std::map<std::string, Setting, std::less<>> table = {
        {"scenario.area_km2", COMPNOMA_DOUBLE(area_km2)},
        {"scenario.lambda_b",
         {[](ScenarioConfig& c, std::string_view k, std::string_view v) { c.lambda_b = to_doubles(k, v); },
          [](const ScenarioConfig& c) { return join_doubles(c.lambda_b); }}},
        {"scenario.lambda_u",
         {[](ScenarioConfig& c, std::string_view k, std::string_view v) { c.lambda_u = to_doubles(k, v); },
          [](const ScenarioConfig& c) { return join_doubles(c.lambda_u); }}},
        {"scenario.gamma_th_db",
         {[](ScenarioConfig& c, std::string_view k, std::string_view v) { c.gamma_th_db = to_doubles(k, v); },
          [](const ScenarioConfig& c) { return join_doubles(c.gamma_th_db); }}},
        {"scenario.clusters",
         {[](ScenarioConfig& c, std::string_view k, std::string_view v) {
              c.clusters = to_integer<std::size_t>(k, v);
          },
          [](const ScenarioConfig& c) { return std::to_string(c.clusters); }}},

        {"radio.tx_power_dbm", COMPNOMA_DOUBLE(tx_power_dbm)},
        {"radio.subchannels",
         {[](ScenarioConfig& c, std::string_view k, std::string_view v) {
              c.subchannels = to_integer<std::size_t>(k, v);
          },
          [](const ScenarioConfig& c) { return std::to_string(c.subchannels); }}},
        {"radio.subchannel_bw_hz", COMPNOMA_DOUBLE(subchannel_bw_hz)},
        {"radio.noise_psd_dbm_hz", COMPNOMA_DOUBLE(noise_psd_dbm_hz)},
        {"radio.pl_intercept_db", COMPNOMA_DOUBLE(budget.pl_intercept_db)},
        {"radio.pl_slope_db", COMPNOMA_DOUBLE(budget.pl_slope_db)},
        {"radio.tx_antenna_gain_db", COMPNOMA_DOUBLE(budget.tx_antenna_gain_db)},
        {"radio.rx_antenna_gain_db", COMPNOMA_DOUBLE(budget.rx_antenna_gain_db)},
        {"radio.penetration_loss_db", COMPNOMA_DOUBLE(budget.penetration_loss_db)},
        {"radio.shadowing_sigma_db", COMPNOMA_DOUBLE(budget.shadowing_sigma_db)},
        {"radio.min_distance_km", COMPNOMA_DOUBLE(budget.min_distance_km)},
        {"radio.fast_fading",
         {[](ScenarioConfig& c, std::string_view k, std::string_view v) { c.fast_fading = to_bool(k, v); },
          [](const ScenarioConfig& c) { return std::string(c.fast_fading ? "true" : "false"); }}},

        {"link.subcarriers", COMPNOMA_DOUBLE(subcarriers)},
        {"link.symbols", COMPNOMA_DOUBLE(symbols)},
        {"link.subframe_s", COMPNOMA_DOUBLE(subframe_s)},
        {"link.mcs_table",
         {[](ScenarioConfig& c, std::string_view, std::string_view v) { c.mcs_table_path = std::string(trim(v)); },
          [](const ScenarioConfig& c) { return c.mcs_table_path; }}},
        {"link.coverage",
         {[](ScenarioConfig& c, std::string_view k, std::string_view v) {
              v = trim(v);
              if (v == "eta")
                  c.coverage_mode = CoverageMode::positive_efficiency;
              else if (v == "sinr")
                  c.coverage_mode = CoverageMode::sinr_threshold;
              else
                  throw ConfigError(std::string(k) + ": expected 'eta' or 'sinr'", std::string(k));
          },
          [](const ScenarioConfig& c) {
              return std::string(c.coverage_mode == CoverageMode::positive_efficiency ? "eta" : "sinr");
          }}},
        {"link.coverage_threshold_db", COMPNOMA_DOUBLE(coverage_threshold_db)},

        {"pairing.admission",
         {[](ScenarioConfig& c, std::string_view k, std::string_view v) {
              v = trim(v);
              if (v == "rate_feasibility")
                  c.pairing.mode = AdmissionMode::rate_feasibility;
              else if (v == "db_gap")
                  c.pairing.mode = AdmissionMode::db_gap;
              else
                  throw ConfigError(std::string(k) + ": expected 'rate_feasibility' or 'db_gap'", std::string(k));
          },
          [](const ScenarioConfig& c) {
              return std::string(c.pairing.mode == AdmissionMode::db_gap ? "db_gap" : "rate_feasibility");
          }}},
        {"pairing.min_gap_db", COMPNOMA_DOUBLE(pairing.min_gap_db)},
        {"pairing.oma_time_share", COMPNOMA_DOUBLE(pairing.oma_time_share)},
        {"pairing.tolerance", COMPNOMA_DOUBLE(pairing.tolerance)},
        {"pairing.enabled",
         {[](ScenarioConfig& c, std::string_view k, std::string_view v) { c.pairing.enabled = to_bool(k, v); },
          [](const ScenarioConfig& c) { return std::string(c.pairing.enabled ? "true" : "false"); }}},

        {"scheduler.alpha", COMPNOMA_DOUBLE(alpha)},

        {"sim.iterations",
         {[](ScenarioConfig& c, std::string_view k, std::string_view v) {
              c.iterations = to_integer<std::size_t>(k, v);
          },
          [](const ScenarioConfig& c) { return std::to_string(c.iterations); }}},
        {"sim.seed",
         {[](ScenarioConfig& c, std::string_view k, std::string_view v) { c.seed = to_integer<std::uint64_t>(k, v); },
          [](const ScenarioConfig& c) { return std::to_string(c.seed); }}},
        {"sim.schemes",
         {[](ScenarioConfig& c, std::string_view k, std::string_view v) {
              c.schemes.clear();
              for (auto item : split_list(v)) {
                  auto s = parse_scheme(item);
                  if (!s) throw ConfigError(std::string(k) + ": unknown scheme '" + std::string(item) + "'",
                                            std::string(k));
                  c.schemes.push_back(*s);
              }
          },
          [](const ScenarioConfig& c) {
              std::string s;
              for (std::size_t i = 0; i < c.schemes.size(); ++i) s += (i ? ", " : "") + std::string(scheme_name(c.schemes[i]));
              return s;
          }}},
    };
    return table;
}

#undef COMPNOMA_DOUBLE

void apply_override(ScenarioConfig& config, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos)
        throw ConfigError("override '" + std::string(assignment) + "' is not of the form section.key=value");
    apply_setting(config, trim(assignment.substr(0, eq)), assignment.substr(eq + 1));
}

}  // namespace

void apply_setting(ScenarioConfig& config, std::string_view key, std::string_view value) {
    const auto& reg = registry();
    auto it = reg.find(key);
    if (it == reg.end()) throw ConfigError("unknown configuration key '" + std::string(key) + "'", std::string(key));
    it->second.set(config, key, value);
}

std::vector<std::string> config_keys() {
    std::vector<std::string> keys;
    for (const auto& [k, _] : registry()) keys.push_back(k);
    return keys;
}

ScenarioConfig parse_config_text(std::string_view text, const std::vector<std::string>& overrides) {
    ScenarioConfig config;
    std::string section;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
        ++line_no;

        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(line_no) + ": malformed section header");
            section = std::string(trim(line.substr(1, line.size() - 2)));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = section.empty() ? std::string(trim(line.substr(0, eq)))
                                                : section + "." + std::string(trim(line.substr(0, eq)));
        apply_setting(config, key, line.substr(eq + 1));
    }
    for (const auto& o : overrides) apply_override(config, o);
    config.validate();
    return config;
}

ScenarioConfig parse_config(const std::optional<std::filesystem::path>& path,
                            const std::vector<std::string>& overrides) {
    if (!path) return parse_config_text("", overrides);
    std::ifstream in(*path);
    if (!in) throw ConfigError("cannot read configuration file " + path->string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), overrides);
}

std::string serialize_config(const ScenarioConfig& config) {
    std::string out;
    std::string current;
    for (const auto& [key, setting] : registry()) {
        const auto dot = key.find('.');
        const std::string section = key.substr(0, dot);
        if (section != current) {
            out += (current.empty() ? "[" : "\n[") + section + "]\n";
            current = section;
        }
        out += key.substr(dot + 1) + " = " + setting.get(config) + "\n";
    }
    return out;
}

std::vector<double> default_gamma_sweep() {
    std::vector<double> g;
    for (int db = -10; db <= 0; ++db) g.push_back(static_cast<double>(db));
    return g;
}

ScenarioConfig figure3_preset() {
    ScenarioConfig c;
    c.lambda_b = {16.0, 30.0};
    c.lambda_u = {40.0, 50.0, 60.0, 70.0, 80.0, 90.0, 140.0, 150.0};
    c.gamma_th_db = {-6.5};
    return c;
}

ScenarioConfig figure4_preset() {
    ScenarioConfig c;
    c.lambda_b = {16.0};
    c.lambda_u = {50.0};
    c.gamma_th_db = default_gamma_sweep();
    return c;
}

ScenarioConfig figure5_preset() { return figure4_preset(); }

void write_manifest(std::ostream& out, const RunManifest& m) {
    out << "# compnoma run manifest\n"
        << "# version: " << m.version << "\n"
        << "# command: " << m.command << "\n"
        << "# status: " << m.status << "\n"
        << "# seed: " << m.config.seed << "\n"
        << "# wall_time_s: " << format_double(m.wall_time.count()) << "\n"
        << "# warnings: " << m.warnings.size() << "\n";
    for (const auto& w : m.warnings) out << "#   " << w << "\n";
    out << "\n" << serialize_config(m.config);
}

}  // namespace compnoma
