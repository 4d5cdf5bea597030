#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "compnoma/deployment.hpp"
#include "compnoma/radio.hpp"

namespace compnoma {

// A user and the linear SINR it is ranked by inside its group.
struct RankedUser {
    std::size_t id = 0;
    double sinr = 0.0;
};

// g1[c]: CoMP users of cluster c, by CoMP SINR descending.
// g2[b]: non-CoMP users served by BS b, by OMA SINR descending.
struct UserGroups {
    std::vector<std::vector<RankedUser>> g1;
    std::vector<std::vector<RankedUser>> g2;
};

enum class PairKind { comp_comp, noncomp_noncomp };

struct NomaPair {
    std::size_t strong = 0;
    std::size_t weak = 0;
    double zeta_strong = 0.0;  // strong user's power share; the weak user gets 1 - zeta_strong
    PairKind kind = PairKind::noncomp_noncomp;
    std::size_t group_key = 0;  // cluster id (comp_comp) or BS id (noncomp_noncomp)
    double strong_sinr = 0.0;   // pre-pairing SINRs the pair was admitted on
    double weak_sinr = 0.0;
};

struct PairingOutcome {
    std::vector<NomaPair> pairs;
    std::vector<std::size_t> oma_leftovers;

    // Schedulable entities: one per pair, one per leftover.
    std::size_t entities() const noexcept { return pairs.size() + oma_leftovers.size(); }
};

// comp[c] covers G1 of cluster c, noncomp[b] covers G2 of BS b.
struct ServingPlan {
    std::vector<PairingOutcome> comp;
    std::vector<PairingOutcome> noncomp;
};

enum class AdmissionMode {
    rate_feasibility,  // pair iff some zeta keeps both users at their time-shared OMA rate
    db_gap,            // additionally require a fixed SINR gap between strong and weak
};

struct PairingOptions {
    AdmissionMode mode = AdmissionMode::rate_feasibility;
    double min_gap_db = 0.0;       // used by db_gap only
    double oma_time_share = 0.5;   // OMA baseline share each user must retain
    double tolerance = 1e-6;       // golden-section interval width
    bool enabled = true;           // false: every user stays OMA
};

// Users with OMA SINR (from their serving BS) strictly below gamma_th_db are
// CoMP and join G1 of their serving BS's cluster; the rest join G2 of their
// serving BS. Sets User::is_comp. bss must carry cluster ids.
UserGroups classify_comp(std::span<User> users, std::span<const BaseStation> bss, std::span<const Cluster> clusters,
                         const RadioContext& ctx, double gamma_th_db);

// Strong-user power share maximizing the pair's Shannon sum rate subject to
// log2(1 + sinr_u^NOMA) >= share * log2(1 + sinr_u^OMA) for both users, with
// zeta restricted to (0, 0.5). nullopt when no such zeta exists.
// Requires gamma_s >= gamma_w > 0.
std::optional<double> solve_power_fraction(double gamma_s, double gamma_w, const PairingOptions& options = {});

// Shannon rates of a pair at a given share, pre-SIC SINRs as inputs.
struct PairRates {
    double strong_bits = 0.0;
    double weak_bits = 0.0;
};
PairRates noma_pair_rates(double gamma_s, double gamma_w, double zeta);

// Halves a descending-ordered group: strong[i] = group[i], weak[i] = group[n - floor(n/2) + i].
// Candidates failing admission and the middle user of odd groups stay OMA.
PairingOutcome pair_group(std::span<const RankedUser> group, PairKind kind, std::size_t group_key,
                          const PairingOptions& options = {});

ServingPlan build_serving_plan(const UserGroups& groups, const PairingOptions& options = {});

}  // namespace compnoma
