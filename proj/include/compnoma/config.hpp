#pragma once

#include <chrono>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "compnoma/sim.hpp"

namespace compnoma {

// Scenario files are INI-like:
//
//   # comment
//   [scenario]
//   lambda_u = 40, 50, 60
//   gamma_th_db = -inf, -6.5
//
// Keys are addressed as "section.key". Overrides use the same
// "section.key=value" form and are applied after the file.
ScenarioConfig parse_config_text(std::string_view text, const std::vector<std::string>& overrides = {});
ScenarioConfig parse_config(const std::optional<std::filesystem::path>& path,
                            const std::vector<std::string>& overrides = {});

// Applies one "section.key=value" assignment. Throws ConfigError on unknown
// keys or malformed values.
void apply_setting(ScenarioConfig& config, std::string_view key, std::string_view value);

// Every key with its resolved value; parse_config_text(serialize_config(c)) == c.
std::string serialize_config(const ScenarioConfig& config);

std::vector<std::string> config_keys();

// Figure presets.
ScenarioConfig figure3_preset();  // throughput vs lambda_u, lambda_b in {16, 30}
ScenarioConfig figure4_preset();  // throughput vs gamma_th
ScenarioConfig figure5_preset();  // coverage vs gamma_th

// gamma_th grid used by the figure 4/5 presets, in dB.
std::vector<double> default_gamma_sweep();

struct RunManifest {
    ScenarioConfig config;
    std::string command;
    std::string version;
    std::chrono::duration<double> wall_time{0};
    std::vector<std::string> warnings;
    std::string status = "ok";
};

// The manifest is itself a valid scenario file: metadata lines are comments.
void write_manifest(std::ostream& out, const RunManifest& manifest);

}  // namespace compnoma
