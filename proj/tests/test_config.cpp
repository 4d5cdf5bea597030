#include <cmath>
#include <sstream>
#include <string>

#include "compnoma/config.hpp"
#include "doctest.h"

using namespace compnoma;

namespace {

std::string key_of(const std::string& text, const std::vector<std::string>& overrides = {}) {
    try {
        parse_config_text(text, overrides);
    } catch (const ConfigError& e) {
        return e.key();
    }
    return "<no error>";
}

}  // namespace

TEST_CASE("empty text yields the defaults") {
    const auto c = parse_config_text("");
    const ScenarioConfig d;
    CHECK(serialize_config(c) == serialize_config(d));
    CHECK(c.area_km2 == 25.0);
    CHECK(c.tx_power_dbm == 46.0);
    CHECK(c.subchannels == 100);
    CHECK(c.budget.shadowing_sigma_db == 8.0);
    CHECK(c.clusters == 10);
    CHECK(c.schemes.size() == 4);
}

TEST_CASE("sections, comments and lists") {
    const auto c = parse_config_text(R"(
# a comment
[scenario]
lambda_b = 16, 30   # trailing comment
lambda_u = 40
gamma_th_db = -inf, -6.5, +inf

[sim]
iterations = 7
schemes = benchmark_oma, comp_noma_proposed
)");
    CHECK(c.lambda_b == std::vector<double>{16.0, 30.0});
    CHECK(c.lambda_u == std::vector<double>{40.0});
    REQUIRE(c.gamma_th_db.size() == 3);
    CHECK(c.gamma_th_db[0] == -INFINITY);
    CHECK(c.gamma_th_db[2] == INFINITY);
    CHECK(c.iterations == 7);
    CHECK(c.schemes == std::vector<SchemeId>{SchemeId::benchmark_oma, SchemeId::comp_noma_proposed});
}

TEST_CASE("overrides win over the file, later overrides over earlier ones") {
    const auto c = parse_config_text("[sim]\nseed = 5\niterations = 3\n",
                                     {"sim.seed=9", "sim.iterations=4", "sim.iterations=6"});
    CHECK(c.seed == 9);
    CHECK(c.iterations == 6);
}

TEST_CASE("invalid values name the offending key") {
    CHECK(key_of("[scenario]\nlambda_u = -5\n") == "scenario.lambda_u");
    CHECK(key_of("", {"scenario.lambda_b=abc"}) == "scenario.lambda_b");
    CHECK(key_of("[sim]\niterations = 0\n") == "sim.iterations");
    CHECK(key_of("[sim]\nschemes = foo\n") == "sim.schemes");
    CHECK(key_of("[link]\ncoverage = maybe\n") == "link.coverage");
    CHECK(key_of("[scheduler]\nalpha = 2\n") == "scheduler.alpha");
    CHECK(key_of("[pairing]\noma_time_share = 1\n") == "pairing.oma_time_share");
    CHECK(key_of("[scenario]\nclusters = 0\n") == "scenario.clusters");
}

TEST_CASE("unknown keys and malformed lines are rejected") {
    CHECK_THROWS_AS(parse_config_text("[scenario]\nlambda_z = 3\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("lambda_u = 3\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("[scenario]\njust words\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("", {"novalue"}), ConfigError);
}

TEST_CASE("serialization round-trips") {
    ScenarioConfig c;
    c.lambda_b = {16.0, 30.0};
    c.lambda_u = {0.1, 1.0 / 3.0};
    c.gamma_th_db = {-INFINITY, -6.5};
    c.coverage_mode = CoverageMode::sinr_threshold;
    c.pairing.mode = AdmissionMode::db_gap;
    c.pairing.min_gap_db = 3.0;
    c.pairing.enabled = false;
    c.fast_fading = true;
    c.seed = 123456789012345ULL;
    c.schemes = {SchemeId::noma_only};
    const auto text = serialize_config(c);
    const auto back = parse_config_text(text);
    CHECK(serialize_config(back) == text);
    CHECK(back.lambda_u == c.lambda_u);
    CHECK(back.seed == c.seed);
    CHECK(back.pairing.enabled == false);
}

TEST_CASE("every registered key appears in the serialized form") {
    const auto text = serialize_config(ScenarioConfig{});
    for (const auto& k : config_keys()) {
        const auto dot = k.find('.');
        CHECK(text.find("[" + k.substr(0, dot) + "]") != std::string::npos);
        CHECK(text.find(k.substr(dot + 1) + " =") != std::string::npos);
    }
}

TEST_CASE("presets") {
    const auto f3 = figure3_preset();
    CHECK(f3.lambda_b == std::vector<double>{16.0, 30.0});
    CHECK(f3.lambda_u == std::vector<double>{40, 50, 60, 70, 80, 90, 140, 150});
    CHECK(f3.gamma_th_db == std::vector<double>{-6.5});

    const auto f4 = figure4_preset();
    CHECK(f4.lambda_b == std::vector<double>{16.0});
    CHECK(f4.lambda_u == std::vector<double>{50.0});
    REQUIRE(f4.gamma_th_db.size() == 11);
    CHECK(f4.gamma_th_db.front() == -10.0);
    CHECK(f4.gamma_th_db.back() == 0.0);
    CHECK(serialize_config(figure5_preset()) == serialize_config(f4));
}

TEST_CASE("a manifest parses back to the same configuration") {
    RunManifest m;
    m.config = figure3_preset();
    m.config.seed = 77;
    m.command = "compnoma figure3 --seed 77";
    m.version = "0.1.0";
    m.warnings = {"cluster count clamped"};
    std::ostringstream out;
    write_manifest(out, m);
    CHECK(serialize_config(parse_config_text(out.str())) == serialize_config(m.config));
}
