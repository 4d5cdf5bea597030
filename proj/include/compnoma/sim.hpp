#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "compnoma/deployment.hpp"
#include "compnoma/grouping.hpp"
#include "compnoma/link.hpp"
#include "compnoma/radio.hpp"
#include "compnoma/scheduler.hpp"

namespace compnoma {

enum class SchemeId { benchmark_oma, comp_only, noma_only, comp_noma_proposed };

inline constexpr std::array<SchemeId, 4> kAllSchemes = {SchemeId::benchmark_oma, SchemeId::comp_only,
                                                        SchemeId::noma_only, SchemeId::comp_noma_proposed};

std::string_view scheme_name(SchemeId id);
std::optional<SchemeId> parse_scheme(std::string_view name);

// Every knob defaults to the reference simulation setup.
struct ScenarioConfig {
    double area_km2 = 25.0;
    std::vector<double> lambda_b = {16.0};
    std::vector<double> lambda_u = {40.0, 50.0, 60.0, 70.0, 80.0, 90.0, 140.0, 150.0};
    std::vector<double> gamma_th_db = {-6.5};

    double tx_power_dbm = 46.0;
    std::size_t subchannels = 100;
    double subchannel_bw_hz = 180e3;
    double noise_psd_dbm_hz = -174.0;
    LinkBudget budget;
    bool fast_fading = false;  // Rayleigh power fading on every link when set

    double subcarriers = 12.0;
    double symbols = 14.0;
    double subframe_s = 1e-3;
    std::string mcs_table_path;  // empty: built-in default table
    CoverageMode coverage_mode = CoverageMode::positive_efficiency;
    double coverage_threshold_db = -6.7;

    std::size_t clusters = 10;
    double alpha = 1.0;
    PairingOptions pairing;

    std::size_t iterations = 100;
    std::uint64_t seed = 1;
    std::vector<SchemeId> schemes = {kAllSchemes.begin(), kAllSchemes.end()};

    // Throws ConfigError naming the offending key.
    void validate() const;

    NoisePower noise() const { return {noise_psd_dbm_hz, subchannel_bw_hz}; }
    SubchannelPlan plan() const { return {subchannels}; }
    FrameParams frame() const { return {subcarriers, symbols, subframe_s, subchannels}; }
};

// One sampled network: positions, clusters, association and channel gains.
struct Realization {
    Area area = Area::from_side_km(1.0);
    std::vector<BaseStation> bss;
    std::vector<User> users;
    std::vector<Cluster> clusters;
    ChannelTable table;
};

// Seeds of one Monte Carlo iteration. Topology streams depend on the
// densities and the iteration only, so every gamma_th point (and every
// scheme) is evaluated on the same realization.
struct IterationSeeds {
    std::uint64_t bs_seed = 0;    // BS positions and clustering
    std::uint64_t user_seed = 0;  // user positions and shadowing
};

IterationSeeds iteration_seeds(std::uint64_t master, std::size_t lambda_b_index, std::size_t lambda_u_index,
                               std::size_t iteration);

Realization build_realization(const ScenarioConfig& config, double lambda_b, double lambda_u,
                              const IterationSeeds& seeds, RunLog* log = nullptr);

// Everything one scheme produced on one realization.
struct SchemeOutcome {
    SchemeId scheme = SchemeId::benchmark_oma;
    UserGroups groups;
    ServingPlan plan;
    TimeAllocation allocation;
    std::vector<UserMetrics> users;  // indexed by user id
};

// Per-scheme grouping, pairing, scheduling and link evaluation. `realization`
// is copied internally where the CoMP flags are written.
SchemeOutcome evaluate_scheme(const ScenarioConfig& config, const Realization& realization, SchemeId scheme,
                              double gamma_th_db, const McsTable& mcs);

struct SweepPoint {
    double lambda_b = 0.0;
    double lambda_u = 0.0;
    double gamma_th_db = 0.0;
    std::size_t lambda_b_index = 0;
    std::size_t lambda_u_index = 0;
    std::size_t gamma_index = 0;
};

// Cartesian product, lambda_b outermost, gamma_th innermost.
std::vector<SweepPoint> sweep_points(const ScenarioConfig& config);

struct IterationSummary {
    double mean_tput_bps = 0.0;
    double coverage = 0.0;
    double mean_theta = 0.0;
    std::size_t users = 0;
    double tput_sum = 0.0;
    std::size_t covered = 0;
};

// Per-scheme summaries of one realization at one gamma_th.
struct IterationResult {
    std::vector<IterationSummary> schemes;  // parallel to config.schemes
    std::vector<SchemeOutcome> outcomes;    // filled only when requested
};

IterationResult run_iteration(const ScenarioConfig& config, const SweepPoint& point, std::size_t iteration,
                              const McsTable& mcs, bool keep_outcomes = false, RunLog* log = nullptr);

struct PointSummary {
    SchemeId scheme = SchemeId::benchmark_oma;
    SweepPoint point;
    double mean_tput_bps = 0.0;
    double tput_ci95_bps = 0.0;
    double coverage = 0.0;
    double coverage_ci95 = 0.0;
    double mean_theta = 0.0;
    double theta_ci95 = 0.0;
    std::size_t iterations = 0;
    std::uint64_t seed = 0;
    std::vector<IterationSummary> samples;
};

struct MetricsReport {
    std::vector<PointSummary> rows;  // point-major, schemes in config order
    RunLog log;

    const PointSummary* find(SchemeId scheme, double lambda_b, double lambda_u, double gamma_th_db) const;
};

struct SweepOptions {
    std::size_t threads = 1;
};

MetricsReport run_sweep(const ScenarioConfig& config, const SweepOptions& options = {});

// One row per scheme and point; the column order is a public interface.
inline constexpr std::array<std::string_view, 10> kCsvColumns = {
    "scheme",   "lambda_b",      "lambda_u", "gamma_th_db", "mean_tput_bps",
    "tput_ci95_bps", "coverage", "coverage_ci95", "iterations",  "seed"};

void write_csv(std::ostream& out, const MetricsReport& report);
void write_iteration_csv(std::ostream& out, const MetricsReport& report);

// Shortest round-trip decimal text of a double.
std::string format_double(double v);

McsTable resolve_mcs_table(const ScenarioConfig& config);

}  // namespace compnoma
