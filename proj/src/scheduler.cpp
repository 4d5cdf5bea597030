#include "compnoma/scheduler.hpp"

#include <algorithm>
#include <stdexcept>

namespace compnoma {

double beta_fraction(std::size_t num_pairs, std::size_t num_oma) {
    const std::size_t entities = num_pairs + num_oma;
    return entities == 0 ? 0.0 : 1.0 / static_cast<double>(entities);
}

double theta_split(std::size_t comp_entities, std::span<const std::size_t> noncomp_entities_per_bs) {
    if (comp_entities == 0) return 0.0;
    const std::size_t busiest =
        noncomp_entities_per_bs.empty() ? 0 : *std::max_element(noncomp_entities_per_bs.begin(),
                                                                noncomp_entities_per_bs.end());
    if (busiest == 0) return 1.0;
    const double ec = static_cast<double>(comp_entities);
    return ec / (ec + static_cast<double>(busiest));
}

TimeAllocation allocate_time(const ServingPlan& plan, std::span<const BaseStation> bss,
                             std::span<const Cluster> clusters, const ThetaRule& rule) {
    TimeAllocation a;
    a.theta.assign(clusters.size(), 0.0);
    a.beta_comp.assign(clusters.size(), 0.0);
    a.beta_noncomp.assign(bss.size(), 0.0);
    a.cluster_of_bs.assign(bss.size(), kNoIndex);

    std::vector<std::size_t> per_bs;
    for (const auto& c : clusters) {
        per_bs.clear();
        for (std::size_t b : c.member_bs) {
            a.cluster_of_bs[b] = c.id;
            const auto& nc = plan.noncomp[b];
            per_bs.push_back(nc.entities());
            a.beta_noncomp[b] = beta_fraction(nc.pairs.size(), nc.oma_leftovers.size());
        }
        const auto& cp = plan.comp[c.id];
        a.beta_comp[c.id] = beta_fraction(cp.pairs.size(), cp.oma_leftovers.size());
        a.theta[c.id] = rule(cp.entities(), per_bs);
        if (!(a.theta[c.id] >= 0.0 && a.theta[c.id] <= 1.0))
            throw std::logic_error("theta rule returned a share outside [0, 1]");
    }
    return a;
}

double airtime(const EntityRef& entity, const TimeAllocation& allocation) {
    if (entity.phase == Phase::comp) {
        const double beta = allocation.beta_comp.at(entity.group);
        if (beta == 0.0) throw std::invalid_argument("entity is not scheduled in the CoMP phase");
        return allocation.theta[entity.group] * beta;
    }
    const double beta = allocation.beta_noncomp.at(entity.group);
    if (beta == 0.0) throw std::invalid_argument("entity is not scheduled in the non-CoMP phase");
    const std::size_t c = allocation.cluster_of_bs.at(entity.group);
    return (1.0 - allocation.theta.at(c)) * beta;
}

}  // namespace compnoma
