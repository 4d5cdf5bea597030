#pragma once

// Reference evaluations written independently of the simulator's radio and
// pairing code, plus invariant checks over simulator outputs. Used by the
// `validate` subcommand and the test suites.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "compnoma/sim.hpp"

namespace compnoma::validation {

// Plain inputs for the direct-sum oracles.
struct OracleInputs {
    std::vector<double> tx_power_dbm;          // per BS
    std::vector<std::vector<double>> gain;     // [user][bs], linear
    std::size_t subchannels = 100;
    double noise_psd_dbm_hz = -174.0;
    double subchannel_bw_hz = 180e3;
};

OracleInputs oracle_inputs(const ScenarioConfig& config, const Realization& r);

double oracle_sinr_oma(const OracleInputs& in, std::size_t user, std::size_t bs);
double oracle_sinr_comp(const OracleInputs& in, std::size_t user, const std::vector<std::size_t>& cluster);
double oracle_sinr_noma_noncomp(const OracleInputs& in, bool strong, double zeta, std::size_t user, std::size_t bs);
double oracle_sinr_noma_comp(const OracleInputs& in, bool strong, double zeta, std::size_t user,
                             const std::vector<std::size_t>& cluster);

// Grid search over zeta in (0, 0.5) at the given step: the feasible grid
// point with the highest Shannon sum rate, or nullopt if none is feasible.
std::optional<double> grid_power_fraction(double gamma_s, double gamma_w, double oma_time_share = 0.5,
                                          double step = 1e-4);

// Violations of the pairing/scheduling invariants for one scheme outcome.
// Empty when everything holds. With eta_coverage, also checks
// covered <=> throughput > 0 for every user.
std::vector<std::string> check_outcome(const SchemeOutcome& outcome, const Realization& r,
                                       const PairingOptions& pairing, bool eta_coverage = true);

struct CheckResult {
    std::string name;
    bool passed = true;
    std::size_t cases = 0;
    std::string detail;
};

struct ValidationOptions {
    std::size_t topologies = 20;
    std::size_t max_bss = 5;
    std::size_t max_users = 10;
    std::uint64_t seed = 2024;
    double rel_tol = 1e-9;
    double zeta_tol = 1e-3;
};

// Randomized small topologies: every SINR operation against its oracle, the
// power-fraction solver against the grid, and the pairing/scheduling
// invariants of every scheme.
std::vector<CheckResult> run_validation(const ValidationOptions& options = {});

}  // namespace compnoma::validation
