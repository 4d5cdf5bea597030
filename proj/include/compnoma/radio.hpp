#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "compnoma/common.hpp"
#include "compnoma/deployment.hpp"
#include "compnoma/rng.hpp"

namespace compnoma {

// Log-distance path loss with lognormal shadowing; all terms in dB.
struct LinkBudget {
    double pl_intercept_db = 133.6;
    double pl_slope_db = 35.0;  // per decade of distance (km)
    double tx_antenna_gain_db = 0.0;
    double rx_antenna_gain_db = 0.0;
    double penetration_loss_db = 0.0;
    double shadowing_sigma_db = 8.0;
    double min_distance_km = 0.010;

    void validate() const;
};

struct NoisePower {
    double psd_dbm_hz = -174.0;
    double subchannel_bw_hz = 180e3;

    double sigma2_dbm() const { return psd_dbm_hz + 10.0 * std::log10(subchannel_bw_hz); }
    double sigma2_mw() const { return db_to_linear(sigma2_dbm()); }
};

// Equal power split over M flat subchannels.
struct SubchannelPlan {
    std::size_t subchannels = 100;

    double per_subchannel_mw(double tx_power_dbm) const {
        return db_to_linear(tx_power_dbm) / static_cast<double>(subchannels);
    }
};

// Loss in dB at distance d (km). d below the distance floor is clamped and,
// when a log is given, reported.
double path_loss(double distance_km, const LinkBudget& budget, RunLog* log = nullptr);

// Linear power gain 10^((-pl + g_t + g_r - f_s - v)/10).
double channel_gain(double distance_km, const LinkBudget& budget, double shadowing_db, RunLog* log = nullptr);

// Per-link linear gains and the shadowing draws behind them, row-major by user.
class ChannelTable {
public:
    ChannelTable() = default;
    ChannelTable(std::size_t users, std::size_t bss);

    std::size_t users() const noexcept { return users_; }
    std::size_t bss() const noexcept { return bss_; }

    double gain(std::size_t user, std::size_t bs) const { return gain_[user * bss_ + bs]; }
    double shadowing_db(std::size_t user, std::size_t bs) const { return shadow_[user * bss_ + bs]; }
    std::span<const double> gains_of(std::size_t user) const {
        return {gain_.data() + user * bss_, bss_};
    }

    void set(std::size_t user, std::size_t bs, double gain, double shadowing_db);

private:
    std::size_t users_ = 0;
    std::size_t bss_ = 0;
    std::vector<double> gain_;
    std::vector<double> shadow_;
};

// Draws i.i.d. N(0, sigma) shadowing per (user, BS) link and evaluates the gains.
ChannelTable build_channel_table(std::span<const Point> users, std::span<const Point> bss,
                                 const LinkBudget& budget, Rng& shadowing_rng, RunLog* log = nullptr);

// Everything an SINR evaluation needs for one realization. Holds references;
// the table and BS list must outlive it.
class RadioContext {
public:
    RadioContext(const ChannelTable& table, std::span<const BaseStation> bss, const SubchannelPlan& plan,
                 const NoisePower& noise);

    std::size_t users() const noexcept { return table_->users(); }
    std::size_t bss() const noexcept { return bss_.size(); }

    // P^{b,m} in mW.
    double subchannel_power(std::size_t bs) const { return sub_power_[bs]; }
    // P^{b,m} g_i^{b,m} in mW.
    double rx_power(std::size_t user, std::size_t bs) const { return sub_power_[bs] * table_->gain(user, bs); }
    double noise_mw() const noexcept { return noise_mw_; }

    // Sum of rx_power over BSs for which in_set[bs] == inside.
    double rx_sum(std::size_t user, std::span<const char> in_set, bool inside) const;

    // Total received power from every BS except `bs`.
    double interference_excluding(std::size_t user, std::size_t bs) const;

    // Membership mask of a cluster over all BSs.
    std::vector<char> cluster_mask(const Cluster& cluster) const;

private:
    const ChannelTable* table_;
    std::span<const BaseStation> bss_;
    std::vector<double> sub_power_;
    double noise_mw_;
};

enum class NomaRole { strong, weak };

// OMA SINR of `user` served by `bs`; every other BS interferes at full power.
double sinr_oma(const RadioContext& ctx, std::size_t user, std::size_t bs);

// Joint-transmission SINR: all cluster members carry signal, out-of-cluster BSs interfere.
double sinr_comp(const RadioContext& ctx, std::size_t user, const Cluster& cluster);
double sinr_comp(const RadioContext& ctx, std::size_t user, std::span<const char> cluster_mask);

// Single-BS NOMA pair member with perfect SIC at the strong user.
// zeta_s is the strong user's share of P^{b,m}; must lie in (0, 1).
double sinr_noma_noncomp(const RadioContext& ctx, NomaRole role, double zeta_s, std::size_t user, std::size_t bs);

// CoMP-CoMP pair member; every cluster BS uses the same strong-user share zeta_t.
double sinr_noma_comp(const RadioContext& ctx, NomaRole role, double zeta_t, std::size_t user, const Cluster& cluster);
double sinr_noma_comp(const RadioContext& ctx, NomaRole role, double zeta_t, std::size_t user,
                      std::span<const char> cluster_mask);

}  // namespace compnoma
