#include "compnoma/grouping.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace compnoma {

namespace {

bool ranked_before(const RankedUser& a, const RankedUser& b) {
    if (a.sinr != b.sinr) return a.sinr > b.sinr;
    return a.id < b.id;
}

}  // namespace

UserGroups classify_comp(std::span<User> users, std::span<const BaseStation> bss, std::span<const Cluster> clusters,
                         const RadioContext& ctx, double gamma_th_db) {
    UserGroups groups;
    groups.g1.resize(clusters.size());
    groups.g2.resize(bss.size());

    std::vector<std::vector<char>> masks;
    masks.reserve(clusters.size());
    for (const auto& c : clusters) masks.push_back(ctx.cluster_mask(c));

    // -inf dB maps to 0 (nobody is CoMP), +inf dB to infinity (everybody is).
    const double threshold = db_to_linear(gamma_th_db);

    for (auto& u : users) {
        const std::size_t b = u.serving_bs;
        const double oma = sinr_oma(ctx, u.id, b);
        u.is_comp = oma < threshold;
        if (u.is_comp) {
            const std::size_t c = bss[b].cluster_id;
            groups.g1[c].push_back({u.id, sinr_comp(ctx, u.id, masks[c])});
        } else {
            groups.g2[b].push_back({u.id, oma});
        }
    }
    for (auto& g : groups.g1) std::sort(g.begin(), g.end(), ranked_before);
    for (auto& g : groups.g2) std::sort(g.begin(), g.end(), ranked_before);
    return groups;
}

PairRates noma_pair_rates(double gamma_s, double gamma_w, double zeta) {
    const double strong = zeta * gamma_s;
    const double weak = (1.0 - zeta) * gamma_w / (zeta * gamma_w + 1.0);
    return {std::log2(1.0 + strong), std::log2(1.0 + weak)};
}

std::optional<double> solve_power_fraction(double gamma_s, double gamma_w, const PairingOptions& options) {
    if (!(gamma_w > 0.0) || !(gamma_s >= gamma_w))
        throw std::invalid_argument("solve_power_fraction requires gamma_s >= gamma_w > 0");

    // Both rate constraints are monotone in zeta and invert in closed form:
    //   strong: 1 + zeta*gs >= (1+gs)^share        -> zeta >= lo
    //   weak:   (1+gw)/(1 + zeta*gw) >= (1+gw)^share -> zeta <= hi
    const double share = options.oma_time_share;
    const double lo = std::max(0.0, std::expm1(share * std::log1p(gamma_s)) / gamma_s);
    const double hi = std::min(0.5, std::expm1((1.0 - share) * std::log1p(gamma_w)) / gamma_w);
    if (!(hi - lo > 1e-12)) return std::nullopt;

    auto sum_rate = [&](double z) {
        const auto r = noma_pair_rates(gamma_s, gamma_w, z);
        return r.strong_bits + r.weak_bits;
    };

    // Golden-section search for the maximum over [lo, hi].
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo;
    double b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = sum_rate(x1);
    double f2 = sum_rate(x2);
    while (b - a > options.tolerance) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = sum_rate(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = sum_rate(x1);
        }
    }
    const double zeta = std::clamp(0.5 * (a + b), lo, hi);
    if (!(zeta > 0.0 && zeta < 0.5)) return std::nullopt;
    return zeta;
}

PairingOutcome pair_group(std::span<const RankedUser> group, PairKind kind, std::size_t group_key,
                          const PairingOptions& options) {
    for (std::size_t i = 1; i < group.size(); ++i)
        if (group[i].sinr > group[i - 1].sinr)
            throw std::invalid_argument("pair_group expects users ordered by SINR, descending");

    PairingOutcome out;
    const std::size_t n = group.size();
    const std::size_t half = options.enabled ? n / 2 : 0;

    for (std::size_t i = 0; i < half; ++i) {
        const RankedUser& s = group[i];
        const RankedUser& w = group[n - half + i];

        std::optional<double> zeta;
        const bool gap_ok = options.mode != AdmissionMode::db_gap ||
                            (w.sinr > 0.0 && linear_to_db(s.sinr / w.sinr) >= options.min_gap_db);
        if (gap_ok && w.sinr > 0.0) zeta = solve_power_fraction(s.sinr, w.sinr, options);

        if (zeta) {
            out.pairs.push_back({s.id, w.id, *zeta, kind, group_key, s.sinr, w.sinr});
        } else {
            out.oma_leftovers.push_back(s.id);
            out.oma_leftovers.push_back(w.id);
        }
    }
    for (std::size_t i = half; i < n - half; ++i) out.oma_leftovers.push_back(group[i].id);
    std::sort(out.oma_leftovers.begin(), out.oma_leftovers.end());
    return out;
}

ServingPlan build_serving_plan(const UserGroups& groups, const PairingOptions& options) {
    ServingPlan plan;
    plan.comp.reserve(groups.g1.size());
    plan.noncomp.reserve(groups.g2.size());
    for (std::size_t c = 0; c < groups.g1.size(); ++c)
        plan.comp.push_back(pair_group(groups.g1[c], PairKind::comp_comp, c, options));
    for (std::size_t b = 0; b < groups.g2.size(); ++b)
        plan.noncomp.push_back(pair_group(groups.g2[b], PairKind::noncomp_noncomp, b, options));
    return plan;
}

}  // namespace compnoma
