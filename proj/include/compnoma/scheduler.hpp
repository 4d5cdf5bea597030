#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "compnoma/deployment.hpp"
#include "compnoma/grouping.hpp"

namespace compnoma {

// Equal share per schedulable entity (alpha = 1). Zero for an empty phase.
double beta_fraction(std::size_t num_pairs, std::size_t num_oma);

// theta = E_c / (E_c + max_b E_b); 0 without CoMP entities, 1 when the
// cluster has CoMP entities only.
double theta_split(std::size_t comp_entities, std::span<const std::size_t> noncomp_entities_per_bs);

// Pluggable rule for the joint-transmission time share of a cluster.
using ThetaRule = std::function<double(std::size_t, std::span<const std::size_t>)>;

// Time shares for one realization. Shares are equal inside a phase, so one
// beta per group is stored.
struct TimeAllocation {
    std::vector<double> theta;            // per cluster
    std::vector<double> beta_comp;        // per cluster, share of each CoMP entity
    std::vector<double> beta_noncomp;     // per BS, share of each non-CoMP entity
    std::vector<std::size_t> cluster_of_bs;
};

TimeAllocation allocate_time(const ServingPlan& plan, std::span<const BaseStation> bss,
                             std::span<const Cluster> clusters, const ThetaRule& rule = theta_split);

enum class Phase { comp, noncomp };

// A schedulable entity: a pair or an OMA user, addressed by its phase and
// group (cluster id for comp, BS id for noncomp).
struct EntityRef {
    Phase phase = Phase::noncomp;
    std::size_t group = 0;
};

// CoMP entities get theta_c * beta_c; non-CoMP entities at BS b get
// (1 - theta_c) * beta_b. Throws if the entity's phase is empty.
double airtime(const EntityRef& entity, const TimeAllocation& allocation);

}  // namespace compnoma
