#include "compnoma/radio.hpp"

#include <string>

namespace compnoma {

void LinkBudget::validate() const {
    if (!(pl_slope_db > 0.0)) throw ConfigError("path-loss slope must be positive", "radio.pl_slope_db");
    if (!(shadowing_sigma_db >= 0.0))
        throw ConfigError("shadowing deviation must be non-negative", "radio.shadowing_sigma_db");
    if (!(min_distance_km > 0.0)) throw ConfigError("distance floor must be positive", "radio.min_distance_km");
}

double path_loss(double distance_km, const LinkBudget& budget, RunLog* log) {
    if (!(distance_km >= budget.min_distance_km)) {
        if (log && distance_km <= 0.0)
            log->warn("link distance " + std::to_string(distance_km) + " km clamped to " +
                      std::to_string(budget.min_distance_km) + " km");
        distance_km = budget.min_distance_km;
    }
    return budget.pl_intercept_db + budget.pl_slope_db * std::log10(distance_km);
}

double channel_gain(double distance_km, const LinkBudget& budget, double shadowing_db, RunLog* log) {
    const double exponent = -path_loss(distance_km, budget, log) + budget.tx_antenna_gain_db +
                            budget.rx_antenna_gain_db - shadowing_db - budget.penetration_loss_db;
    return db_to_linear(exponent);
}

ChannelTable::ChannelTable(std::size_t users, std::size_t bss)
    : users_(users), bss_(bss), gain_(users * bss, 0.0), shadow_(users * bss, 0.0) {}

void ChannelTable::set(std::size_t user, std::size_t bs, double gain, double shadowing_db) {
    gain_[user * bss_ + bs] = gain;
    shadow_[user * bss_ + bs] = shadowing_db;
}

ChannelTable build_channel_table(std::span<const Point> users, std::span<const Point> bss, const LinkBudget& budget,
                                 Rng& shadowing_rng, RunLog* log) {
    ChannelTable table(users.size(), bss.size());
    std::normal_distribution<double> shadow(0.0, 1.0);
    std::size_t clamped = 0;
    for (std::size_t u = 0; u < users.size(); ++u) {
        for (std::size_t b = 0; b < bss.size(); ++b) {
            const double chi = budget.shadowing_sigma_db * shadow(shadowing_rng);
            const double d = distance(users[u], bss[b]);
            if (d < budget.min_distance_km) ++clamped;
            table.set(u, b, channel_gain(d, budget, chi), chi);
        }
    }
    if (log && clamped > 0)
        log->warn(std::to_string(clamped) + " link(s) closer than " + std::to_string(budget.min_distance_km) +
                  " km clamped to the distance floor");
    return table;
}

RadioContext::RadioContext(const ChannelTable& table, std::span<const BaseStation> bss, const SubchannelPlan& plan,
                           const NoisePower& noise)
    : table_(&table), bss_(bss), sub_power_(bss.size()), noise_mw_(noise.sigma2_mw()) {
    if (plan.subchannels == 0) throw ConfigError("subchannel count must be at least 1", "radio.subchannels");
    if (table.bss() != bss.size()) throw TopologyError("channel table does not match the BS list");
    for (std::size_t b = 0; b < bss.size(); ++b) sub_power_[b] = plan.per_subchannel_mw(bss[b].tx_power_dbm);
}

double RadioContext::rx_sum(std::size_t user, std::span<const char> in_set, bool inside) const {
    const auto g = table_->gains_of(user);
    double s = 0.0;
    for (std::size_t b = 0; b < g.size(); ++b)
        if ((in_set[b] != 0) == inside) s += sub_power_[b] * g[b];
    return s;
}

double RadioContext::interference_excluding(std::size_t user, std::size_t bs) const {
    const auto g = table_->gains_of(user);
    double s = 0.0;
    for (std::size_t b = 0; b < g.size(); ++b)
        if (b != bs) s += sub_power_[b] * g[b];
    return s;
}

std::vector<char> RadioContext::cluster_mask(const Cluster& cluster) const {
    std::vector<char> mask(bss_.size(), 0);
    for (std::size_t b : cluster.member_bs) mask[b] = 1;
    return mask;
}

double sinr_oma(const RadioContext& ctx, std::size_t user, std::size_t bs) {
    return ctx.rx_power(user, bs) / (ctx.interference_excluding(user, bs) + ctx.noise_mw());
}

double sinr_comp(const RadioContext& ctx, std::size_t user, std::span<const char> cluster_mask) {
    const double signal = ctx.rx_sum(user, cluster_mask, true);
    const double interference = ctx.rx_sum(user, cluster_mask, false);
    return signal / (interference + ctx.noise_mw());
}

double sinr_comp(const RadioContext& ctx, std::size_t user, const Cluster& cluster) {
    return sinr_comp(ctx, user, ctx.cluster_mask(cluster));
}

namespace {

void check_fraction(double zeta) {
    if (!(zeta > 0.0 && zeta < 1.0))
        throw std::invalid_argument("NOMA power fraction must lie in (0, 1), got " + std::to_string(zeta));
}

// Single-BS and joint-transmission pairs differ only in which BSs count as
// useful power. The weak user also sees the strong user's share.
double noma_sinr(NomaRole role, double zeta, double useful, double external) {
    if (role == NomaRole::strong) return zeta * useful / external;
    return (1.0 - zeta) * useful / (zeta * useful + external);
}

}  // namespace

double sinr_noma_noncomp(const RadioContext& ctx, NomaRole role, double zeta_s, std::size_t user, std::size_t bs) {
    check_fraction(zeta_s);
    return noma_sinr(role, zeta_s, ctx.rx_power(user, bs), ctx.interference_excluding(user, bs) + ctx.noise_mw());
}

double sinr_noma_comp(const RadioContext& ctx, NomaRole role, double zeta_t, std::size_t user,
                      std::span<const char> cluster_mask) {
    check_fraction(zeta_t);
    return noma_sinr(role, zeta_t, ctx.rx_sum(user, cluster_mask, true),
                     ctx.rx_sum(user, cluster_mask, false) + ctx.noise_mw());
}

double sinr_noma_comp(const RadioContext& ctx, NomaRole role, double zeta_t, std::size_t user,
                      const Cluster& cluster) {
    return sinr_noma_comp(ctx, role, zeta_t, user, ctx.cluster_mask(cluster));
}

}  // namespace compnoma
