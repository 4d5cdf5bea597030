#include "compnoma/validation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "compnoma/rng.hpp"

namespace compnoma::validation {

namespace {

double mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

double p_sub(const OracleInputs& in, std::size_t b) {
    return mw(in.tx_power_dbm[b]) / static_cast<double>(in.subchannels);
}

double sigma2(const OracleInputs& in) {
    return mw(in.noise_psd_dbm_hz + 10.0 * std::log10(in.subchannel_bw_hz));
}

bool member(const std::vector<std::size_t>& set, std::size_t b) {
    return std::find(set.begin(), set.end(), b) != set.end();
}

bool close(double a, double b, double rel) {
    return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b)) || a == b;
}

std::string describe(const char* what, double got, double want) {
    std::ostringstream s;
    s.precision(17);
    s << what << ": got " << got << ", oracle " << want;
    return s.str();
}

}  // namespace

OracleInputs oracle_inputs(const ScenarioConfig& config, const Realization& r) {
    OracleInputs in;
    for (const auto& b : r.bss) in.tx_power_dbm.push_back(b.tx_power_dbm);
    in.gain.assign(r.table.users(), std::vector<double>(r.table.bss()));
    for (std::size_t u = 0; u < r.table.users(); ++u)
        for (std::size_t b = 0; b < r.table.bss(); ++b) in.gain[u][b] = r.table.gain(u, b);
    in.subchannels = config.subchannels;
    in.noise_psd_dbm_hz = config.noise_psd_dbm_hz;
    in.subchannel_bw_hz = config.subchannel_bw_hz;
    return in;
}

double oracle_sinr_oma(const OracleInputs& in, std::size_t user, std::size_t bs) {
    double interference = 0.0;
    for (std::size_t b = 0; b < in.tx_power_dbm.size(); ++b)
        if (b != bs) interference += p_sub(in, b) * in.gain[user][b];
    return p_sub(in, bs) * in.gain[user][bs] / (interference + sigma2(in));
}

double oracle_sinr_comp(const OracleInputs& in, std::size_t user, const std::vector<std::size_t>& cluster) {
    double signal = 0.0;
    double interference = 0.0;
    for (std::size_t b = 0; b < in.tx_power_dbm.size(); ++b) {
        const double p = p_sub(in, b) * in.gain[user][b];
        (member(cluster, b) ? signal : interference) += p;
    }
    return signal / (interference + sigma2(in));
}

double oracle_sinr_noma_noncomp(const OracleInputs& in, bool strong, double zeta, std::size_t user, std::size_t bs) {
    double interference = 0.0;
    for (std::size_t b = 0; b < in.tx_power_dbm.size(); ++b)
        if (b != bs) interference += p_sub(in, b) * in.gain[user][b];
    const double own = p_sub(in, bs) * in.gain[user][bs];
    if (strong) return zeta * own / (interference + sigma2(in));
    return (1.0 - zeta) * own / (zeta * own + interference + sigma2(in));
}

double oracle_sinr_noma_comp(const OracleInputs& in, bool strong, double zeta, std::size_t user,
                             const std::vector<std::size_t>& cluster) {
    double weak_part = 0.0;
    double strong_part = 0.0;
    double outside = 0.0;
    for (std::size_t b = 0; b < in.tx_power_dbm.size(); ++b) {
        const double p = p_sub(in, b) * in.gain[user][b];
        if (member(cluster, b)) {
            weak_part += (1.0 - zeta) * p;
            strong_part += zeta * p;
        } else {
            outside += p;
        }
    }
    if (strong) return strong_part / (outside + sigma2(in));
    return weak_part / (strong_part + outside + sigma2(in));
}

std::optional<double> grid_power_fraction(double gamma_s, double gamma_w, double share, double step) {
    std::optional<double> best;
    double best_rate = -1.0;
    const auto n = static_cast<long>(std::floor(0.5 / step));
    for (long i = 1; i < n || (i == n && i * step < 0.5); ++i) {
        const double z = static_cast<double>(i) * step;
        const double rs = std::log2(1.0 + z * gamma_s);
        const double rw = std::log2(1.0 + (1.0 - z) * gamma_w / (z * gamma_w + 1.0));
        if (rs < share * std::log2(1.0 + gamma_s) || rw < share * std::log2(1.0 + gamma_w)) continue;
        if (rs + rw > best_rate) {
            best_rate = rs + rw;
            best = z;
        }
    }
    return best;
}

std::vector<std::string> check_outcome(const SchemeOutcome& o, const Realization& r, const PairingOptions& pairing,
                                       bool eta_coverage) {
    std::vector<std::string> v;
    const std::size_t n = r.users.size();

    // Group membership: each user in exactly one group list.
    std::vector<std::size_t> group_hits(n, 0);
    std::vector<std::size_t> g1_of(n, kNoIndex), g2_of(n, kNoIndex);
    for (std::size_t c = 0; c < o.groups.g1.size(); ++c)
        for (const auto& ru : o.groups.g1[c]) {
            ++group_hits[ru.id];
            g1_of[ru.id] = c;
        }
    for (std::size_t b = 0; b < o.groups.g2.size(); ++b)
        for (const auto& ru : o.groups.g2[b]) {
            ++group_hits[ru.id];
            g2_of[ru.id] = b;
        }
    for (std::size_t u = 0; u < n; ++u)
        if (group_hits[u] != 1) v.push_back("user " + std::to_string(u) + " appears in " +
                                            std::to_string(group_hits[u]) + " groups");

    // Partition: each user in exactly one pair or leftover slot.
    std::vector<std::size_t> hits(n, 0);
    auto visit = [&](const PairingOutcome& po, PairKind kind, std::size_t key) {
        for (const auto& p : po.pairs) {
            ++hits[p.strong];
            ++hits[p.weak];
            if (p.strong == p.weak) v.push_back("pair with identical members");
            if (p.kind != kind || p.group_key != key) v.push_back("pair stored under the wrong group");
            const auto& of = kind == PairKind::comp_comp ? g1_of : g2_of;
            if (of[p.strong] != key || of[p.weak] != key)
                v.push_back("cross-group pair (" + std::to_string(p.strong) + ", " + std::to_string(p.weak) + ")");
            if (!(p.strong_sinr >= p.weak_sinr)) v.push_back("strong member ranked below weak member");
            if (!(p.zeta_strong > 0.0 && p.zeta_strong < 0.5)) v.push_back("power fraction outside (0, 0.5)");
            if (std::abs(p.zeta_strong + (1.0 - p.zeta_strong) - 1.0) > 1e-15)
                v.push_back("pair power shares do not sum to one");
            const auto rates = noma_pair_rates(p.strong_sinr, p.weak_sinr, p.zeta_strong);
            const double share = pairing.oma_time_share;
            if (rates.strong_bits < share * std::log2(1.0 + p.strong_sinr) - 1e-12 ||
                rates.weak_bits < share * std::log2(1.0 + p.weak_sinr) - 1e-12)
                v.push_back("admitted pair violates its rate constraints");
        }
        for (std::size_t u : po.oma_leftovers) ++hits[u];
    };
    for (std::size_t c = 0; c < o.plan.comp.size(); ++c) visit(o.plan.comp[c], PairKind::comp_comp, c);
    for (std::size_t b = 0; b < o.plan.noncomp.size(); ++b) visit(o.plan.noncomp[b], PairKind::noncomp_noncomp, b);
    for (std::size_t u = 0; u < n; ++u)
        if (hits[u] != 1)
            v.push_back("user " + std::to_string(u) + " scheduled " + std::to_string(hits[u]) + " times");

    // Scheduler normalization.
    const auto& a = o.allocation;
    for (const auto& c : r.clusters) {
        const double th = a.theta[c.id];
        if (!(th >= 0.0 && th <= 1.0)) v.push_back("theta outside [0, 1]");
        const std::size_t ec = o.plan.comp[c.id].entities();
        if (ec > 0 && std::abs(a.beta_comp[c.id] * static_cast<double>(ec) - 1.0) > 1e-12)
            v.push_back("CoMP shares of cluster " + std::to_string(c.id) + " do not sum to one");
        if (ec == 0 && th != 0.0) v.push_back("theta > 0 without CoMP entities");
        for (std::size_t b : c.member_bs) {
            const std::size_t eb = o.plan.noncomp[b].entities();
            if (eb == 0) continue;
            if (std::abs(a.beta_noncomp[b] * static_cast<double>(eb) - 1.0) > 1e-12)
                v.push_back("non-CoMP shares of BS " + std::to_string(b) + " do not sum to one");
            const double phase = airtime({Phase::noncomp, b}, a) * static_cast<double>(eb);
            if (std::abs(phase - (1.0 - th)) > 1e-12) v.push_back("non-CoMP airtime does not fill 1 - theta");
        }
    }

    for (std::size_t u = 0; u < o.users.size(); ++u) {
        const auto& m = o.users[u];
        if (!(m.throughput_bps >= 0.0) || !std::isfinite(m.sinr) || m.sinr < 0.0)
            v.push_back("user " + std::to_string(u) + " has invalid metrics");
        if (eta_coverage && m.covered != (m.throughput_bps > 0.0))
            v.push_back("user " + std::to_string(u) + ": coverage and throughput disagree");
    }
    return v;
}

namespace {

Realization random_topology(Rng& rng, const ValidationOptions& opt, const ScenarioConfig& config) {
    std::uniform_int_distribution<std::size_t> nb(1, opt.max_bss), nu(1, opt.max_users);
    std::uniform_real_distribution<double> coord(0.0, 2.0);
    Realization r;
    r.area = Area::from_side_km(2.0);
    const std::size_t B = nb(rng), U = nu(rng);
    std::vector<Point> bp(B), up(U);
    for (auto& p : bp) p = {coord(rng), coord(rng)};
    for (auto& p : up) p = {coord(rng), coord(rng)};
    for (std::size_t b = 0; b < B; ++b) r.bss.push_back({b, bp[b], config.tx_power_dbm, kNoIndex});
    for (std::size_t u = 0; u < U; ++u) r.users.push_back({u, up[u], kNoIndex, false});
    std::uniform_int_distribution<std::size_t> kd(1, B);
    r.clusters = cluster_bs(bp, kd(rng), rng);
    assign_cluster_ids(r.bss, r.clusters);
    r.table = build_channel_table(up, bp, config.budget, rng);
    associate_users(r.users, r.bss, r.table);
    return r;
}

}  // namespace

std::vector<CheckResult> run_validation(const ValidationOptions& opt) {
    ScenarioConfig config;
    const McsTable& mcs = McsTable::default_table();
    Rng rng(opt.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    CheckResult oma{"sinr_oma vs direct sum"}, comp{"sinr_comp vs direct sum"},
        nn{"sinr_noma_noncomp vs direct sum"}, nc{"sinr_noma_comp vs direct sum"},
        degen{"single-BS cluster degeneracy"}, zeta{"power fraction vs grid search"},
        inv{"pairing and scheduling invariants"};

    auto fail = [](CheckResult& c, std::string detail) {
        if (c.passed) c.detail = std::move(detail);
        c.passed = false;
    };

    for (std::size_t t = 0; t < opt.topologies; ++t) {
        const Realization r = random_topology(rng, opt, config);
        const RadioContext ctx(r.table, r.bss, config.plan(), config.noise());
        const OracleInputs in = oracle_inputs(config, r);

        for (std::size_t u = 0; u < r.users.size(); ++u) {
            for (std::size_t b = 0; b < r.bss.size(); ++b) {
                ++oma.cases;
                const double got = sinr_oma(ctx, u, b), want = oracle_sinr_oma(in, u, b);
                if (!close(got, want, opt.rel_tol)) fail(oma, describe("oma", got, want));

                const double z = 0.01 + 0.98 * unit(rng);
                for (bool strong : {true, false}) {
                    ++nn.cases;
                    const double g = sinr_noma_noncomp(ctx, strong ? NomaRole::strong : NomaRole::weak, z, u, b);
                    const double w = oracle_sinr_noma_noncomp(in, strong, z, u, b);
                    if (!close(g, w, opt.rel_tol)) fail(nn, describe("noma_noncomp", g, w));
                }

                ++degen.cases;
                const Cluster single{0, {b}, r.bss[b].position};
                if (!close(sinr_comp(ctx, u, single), sinr_oma(ctx, u, b), 1e-12))
                    fail(degen, "sinr_comp of a one-BS cluster differs from sinr_oma");
                for (auto role : {NomaRole::strong, NomaRole::weak})
                    if (!close(sinr_noma_comp(ctx, role, z, u, single), sinr_noma_noncomp(ctx, role, z, u, b), 1e-12))
                        fail(degen, "sinr_noma_comp of a one-BS cluster differs from sinr_noma_noncomp");
            }
            for (const auto& c : r.clusters) {
                ++comp.cases;
                const double got = sinr_comp(ctx, u, c), want = oracle_sinr_comp(in, u, c.member_bs);
                if (!close(got, want, opt.rel_tol)) fail(comp, describe("comp", got, want));
                const double z = 0.01 + 0.98 * unit(rng);
                for (bool strong : {true, false}) {
                    ++nc.cases;
                    const double g = sinr_noma_comp(ctx, strong ? NomaRole::strong : NomaRole::weak, z, u, c);
                    const double w = oracle_sinr_noma_comp(in, strong, z, u, c.member_bs);
                    if (!close(g, w, opt.rel_tol)) fail(nc, describe("noma_comp", g, w));
                }
            }
        }

        // Solver against the grid on every ordered pair of OMA SINRs.
        std::vector<double> s;
        for (const auto& u : r.users) s.push_back(sinr_oma(ctx, u.id, u.serving_bs));
        for (std::size_t i = 0; i < s.size(); ++i)
            for (std::size_t j = 0; j < s.size(); ++j) {
                if (i == j || s[i] < s[j]) continue;
                ++zeta.cases;
                const auto got = solve_power_fraction(s[i], s[j]);
                const auto want = grid_power_fraction(s[i], s[j]);
                if (!got && want) fail(zeta, "solver rejected a pair the grid admits");
                if (got && want && std::abs(*got - *want) > opt.zeta_tol)
                    fail(zeta, describe("zeta", *got, *want));
            }

        for (double g : std::initializer_list<double>{-INFINITY, -6.5, 0.0, INFINITY}) {
            for (SchemeId scheme : kAllSchemes) {
                ++inv.cases;
                const auto o = evaluate_scheme(config, r, scheme, g, mcs);
                const auto issues = check_outcome(o, r, config.pairing);
                if (!issues.empty()) fail(inv, std::string(scheme_name(scheme)) + ": " + issues.front());
            }
        }
    }
    return {oma, comp, nn, nc, degen, zeta, inv};
}

}  // namespace compnoma::validation
